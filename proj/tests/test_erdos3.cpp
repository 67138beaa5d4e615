#include "dsm/erdos3.hpp"
#include "dsm/random.hpp"

#include "oracle.hpp"

#include <catch_amalgamated.hpp>

using namespace dsm;

TEST_CASE("erdos3: canonical representatives", "[erdos3]") {
    CHECK(canonical(CanonicalTag::I3).matrix() == RatMatrix::identity(3));
    CHECK(canonical(CanonicalTag::J3).matrix() == make_jn(3).matrix());
    CHECK(canonical(CanonicalTag::I1_J2).matrix() ==
          rat_matrix({{"1", "0", "0"}, {"0", "1/2", "1/2"}, {"0", "1/2", "1/2"}}));
    CHECK(canonical(CanonicalTag::S).matrix() ==
          rat_matrix({{"0", "1/2", "1/2"}, {"1/2", "1/4", "1/4"}, {"1/2", "1/4", "1/4"}}));
    CHECK(canonical(CanonicalTag::T).matrix() ==
          rat_matrix({{"0", "1/2", "1/2"}, {"1/2", "0", "1/2"}, {"1/2", "1/2", "0"}}));
    CHECK(canonical(CanonicalTag::R).matrix() ==
          rat_matrix({{"3/5", "0", "2/5"}, {"0", "3/5", "2/5"}, {"2/5", "2/5", "1/5"}}));
    for (CanonicalTag t : kCanonicalTags) {
        CHECK(parse_canonical_tag(to_string(t)) == t);
        CHECK(marcus_ree_gap(canonical(t)).saturated);
    }
    CHECK(parse_canonical_tag("I1_J2") == CanonicalTag::I1_J2);
    CHECK_FALSE(parse_canonical_tag("Q").has_value());
}

TEST_CASE("erdos3: permutation equivalence", "[erdos3]") {
    const RatMatrix s = canonical(CanonicalTag::S).matrix();
    const Permutation id = Permutation::identity(3);
    const auto self = permutation_equivalent(s, s);
    REQUIRE(self);
    CHECK(self->first == id);
    CHECK(self->second == id);

    const Permutation swap{1, 0, 2};
    const RatMatrix swapped = permute(s, swap, id);
    const auto w = permutation_equivalent(swapped, s);
    REQUIRE(w);
    CHECK(permute(swapped, w->first, w->second) == s);
    CHECK(w->first == swap);
    CHECK(w->second == id);

    CHECK_FALSE(permutation_equivalent(s, canonical(CanonicalTag::T).matrix()));
    CHECK_THROWS_AS(permutation_equivalent(s, make_jn(2).matrix()), DomainError);
    CHECK_THROWS_AS(permutation_equivalent(make_jn(9).matrix(), make_jn(9).matrix()), DomainError);
}

TEST_CASE("erdos3: the six representatives are pairwise inequivalent", "[erdos3]") {
    const auto perms = all_permutations(3);
    for (CanonicalTag a : kCanonicalTags) {
        for (CanonicalTag b : kCanonicalTags) {
            if (a == b) continue;
            CHECK_FALSE(permutation_equivalent(canonical(a).matrix(), canonical(b).matrix()));
            // Exhaustive double check over all 36 pairs, without the greedy column matching.
            for (const auto& p : perms)
                for (const auto& q : perms) CHECK_FALSE(permute(canonical(a).matrix(), p, q) == canonical(b).matrix());
        }
    }
}

TEST_CASE("erdos3: orbit sizes", "[erdos3]") {
    CHECK(orbit(canonical(CanonicalTag::I3).matrix()).size() == 6);
    CHECK(orbit(canonical(CanonicalTag::J3).matrix()).size() == 1);
    CHECK(orbit(canonical(CanonicalTag::I1_J2).matrix()).size() == 9);
    CHECK(orbit(canonical(CanonicalTag::S).matrix()).size() == 9);
    CHECK(orbit(canonical(CanonicalTag::T).matrix()).size() == 6);
    CHECK(orbit(canonical(CanonicalTag::R).matrix()).size() == 18);
}

TEST_CASE("erdos3: classify3 examples", "[erdos3]") {
    const Classification r = classify3(canonical(CanonicalTag::R));
    CHECK(r.saturated);
    CHECK(r.form == CanonicalTag::R);
    REQUIRE(r.witness);
    CHECK(r.witness->first == Permutation::identity(3));
    CHECK(r.witness->second == Permutation::identity(3));
    CHECK_FALSE(r.separator);

    const auto case1 = validate_ds(rat_matrix({{"1/2", "1/4", "1/4"}, {"0", "1/2", "1/2"}, {"1/2", "1/4", "1/4"}}));
    const Classification c1 = classify3(case1);
    CHECK(c1.saturated);
    CHECK(c1.form == CanonicalTag::S);
    CHECK(permute(case1.matrix(), c1.witness->first, c1.witness->second) == canonical(CanonicalTag::S).matrix());

    const auto pos = validate_ds(rat_matrix({{"1/2", "1/4", "1/4"}, {"1/4", "1/2", "1/4"}, {"1/4", "1/4", "1/2"}}));
    const Classification cp = classify3(pos);
    CHECK_FALSE(cp.saturated);
    CHECK_FALSE(cp.form);
    CHECK_FALSE(cp.witness);
    REQUIRE(cp.separator);
    CHECK(*cp.separator == Permutation::identity(3));
    CHECK(diagonal_sum(pos.matrix(), *cp.separator) == Rational(3, 2));
    CHECK(cp.gap.frob_sq == Rational(9, 8));

    CHECK_THROWS_AS(classify3(make_jn(2)), DomainError);
    CHECK_THROWS_AS(classify3(make_jn(4)), DomainError);
}

TEST_CASE("erdos3: classify2", "[erdos3]") {
    auto two = [](const char* t, const char* s) { return validate_ds(rat_matrix({{t, s}, {s, t}})); };
    CHECK(classify2(two("1/2", "1/2")));
    CHECK(classify2(two("1", "0")));
    CHECK(classify2(two("0", "1")));
    CHECK_FALSE(classify2(two("1/4", "3/4")));
    CHECK(marcus_ree_gap(two("1/4", "3/4")).gap == Rational(1, 4));
    for (long k = 0; k <= 24; ++k) {
        const Rational t(k, 24);
        RatMatrix a(2);
        a(0, 0) = a(1, 1) = t;
        a(0, 1) = a(1, 0) = 1 - t;
        const auto ds = validate_ds(a);
        CHECK(classify2(ds) == marcus_ree_gap(ds).saturated);
    }
    CHECK_THROWS_AS(classify2(make_jn(3)), DomainError);
}

TEST_CASE("erdos3: canonicals under all 36 permutation pairs", "[erdos3][property]") {
    const auto perms = all_permutations(3);
    for (CanonicalTag tag : kCanonicalTags) {
        for (const auto& p : perms) {
            for (const auto& q : perms) {
                const auto a = permute(canonical(tag), p, q);
                const Classification c = classify3(a);
                CHECK(c.saturated);
                CHECK(c.form == tag);
                CHECK(permute(a.matrix(), c.witness->first, c.witness->second) == canonical(tag).matrix());
            }
        }
    }
}

TEST_CASE("erdos3: soundness on random matrices", "[erdos3][property]") {
    // classify3 itself throws if the canonical search and the exact gap
    // disagree; here the gap is recomputed by the oracle as well.
    oracle::DsGen gen(314);
    std::size_t saturated = 0;
    for (int t = 0; t < 100000; ++t) {
        const auto a = validate_ds(gen.next(3, 1 + gen.below(4)));
        const Classification c = classify3(a);
        const bool sat = oracle::frobenius_sq(a.matrix()) == oracle::max_trace(a.matrix()).value;
        REQUIRE(c.saturated == sat);
        if (sat) {
            ++saturated;
            REQUIRE(c.witness);
            CHECK(permute(a.matrix(), c.witness->first, c.witness->second) == canonical(*c.form).matrix());
        } else {
            REQUIRE(c.separator);
            CHECK(diagonal_sum(a.matrix(), *c.separator) == c.gap.max_trace);
            CHECK(c.gap.max_trace > c.gap.frob_sq);
        }
    }
    CHECK(saturated > 0);
}

TEST_CASE("erdos3: classification is invariant under permutations", "[erdos3][property]") {
    oracle::DsGen gen(2718);
    Rng rng(2718);
    for (int t = 0; t < 5000; ++t) {
        const auto a = validate_ds(gen.next(3, 1 + gen.below(3)));
        const auto b = permute(a, rng.permutation(3), rng.permutation(3));
        const Classification ca = classify3(a), cb = classify3(b);
        CHECK(ca.saturated == cb.saturated);
        CHECK(ca.form == cb.form);
    }
}
