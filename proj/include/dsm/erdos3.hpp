#pragma once

// Exact saturation decision for 3x3 doubly stochastic matrices.
//
// A 3x3 doubly stochastic A has frobenius_sq(A) == max_trace(A) iff PAQ is
// one of six fixed representatives for some permutation matrices P, Q.  The
// classifier decides by searching for (P, Q) against each representative and
// cross-checks the answer with the direct gap computation.

#include "dsm/diagsum.hpp"
#include "dsm/doubly_stochastic.hpp"
#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dsm {

enum class CanonicalTag { I3, J3, I1_J2, S, T, R };

inline constexpr std::array<CanonicalTag, 6> kCanonicalTags = {
    CanonicalTag::I3, CanonicalTag::J3, CanonicalTag::I1_J2, CanonicalTag::S, CanonicalTag::T, CanonicalTag::R};

inline const char* to_string(CanonicalTag t) {
    switch (t) {
    case CanonicalTag::I3: return "I3";
    case CanonicalTag::J3: return "J3";
    case CanonicalTag::I1_J2: return "I1J2";
    case CanonicalTag::S: return "S";
    case CanonicalTag::T: return "T";
    case CanonicalTag::R: return "R";
    }
    return "?";
}

inline std::optional<CanonicalTag> parse_canonical_tag(std::string_view name) {
    for (CanonicalTag t : kCanonicalTags)
        if (name == to_string(t)) return t;
    if (name == "I1_J2") return CanonicalTag::I1_J2;
    return std::nullopt;
}

inline DoublyStochastic canonical(CanonicalTag tag) {
    switch (tag) {
    case CanonicalTag::I3: return identity_ds(3);
    case CanonicalTag::J3: return make_jn(3);
    case CanonicalTag::I1_J2: return direct_sum(identity_ds(1), make_jn(2));
    case CanonicalTag::S:
        return validate_ds(rat_matrix({{"0", "1/2", "1/2"}, {"1/2", "1/4", "1/4"}, {"1/2", "1/4", "1/4"}}));
    case CanonicalTag::T: return make_tn(3);
    case CanonicalTag::R:
        return validate_ds(rat_matrix({{"3/5", "0", "2/5"}, {"0", "3/5", "2/5"}, {"2/5", "2/5", "1/5"}}));
    }
    throw std::logic_error("unknown canonical tag");
}

using PermutationPair = std::pair<Permutation, Permutation>;

inline constexpr std::size_t kEquivalenceCap = 8;

/// Some (P, Q) with permute(a, P, Q) == b, or nullopt.  P runs over all n!
/// row permutations in lexicographic order; for each, Q is the
/// lexicographically smallest column matching (equal columns are
/// interchangeable, so greedy matching is complete).  The first hit is
/// returned.
template <class T>
std::optional<PermutationPair> permutation_equivalent(const Matrix<T>& a, const Matrix<T>& b) {
    const std::size_t n = a.order();
    if (b.order() != n) throw DomainError(ErrorCode::SizeMismatch, "matrices of different order");
    if (n > kEquivalenceCap)
        throw DomainError(ErrorCode::OrderTooLarge, "permutation equivalence is capped at n = 8");

    Permutation p = Permutation::identity(n);
    std::vector<std::size_t> q(n);
    std::vector<bool> taken(n);
    do {
        std::fill(taken.begin(), taken.end(), false);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            // Column j of PA must land on an equal, still free column of b.
            ok = false;
            for (std::size_t k = 0; k < n; ++k) {
                if (taken[k]) continue;
                bool same = true;
                for (std::size_t i = 0; i < n && same; ++i) same = a(p[i], j) == b(i, k);
                if (same) {
                    q[j] = k;
                    taken[k] = true;
                    ok = true;
                    break;
                }
            }
        }
        if (ok) return PermutationPair{p, Permutation(q)};
    } while (p.next());
    return std::nullopt;
}

/// The set of all PAQ.
template <class T>
std::set<Matrix<T>> orbit(const Matrix<T>& a) {
    std::set<Matrix<T>> out;
    const auto perms = all_permutations(a.order());
    for (const auto& p : perms)
        for (const auto& q : perms) out.insert(permute(a, p, q));
    return out;
}

struct Classification {
    bool saturated = false;
    std::optional<CanonicalTag> form;
    std::optional<PermutationPair> witness;  // permute(a, P, Q) == canonical(*form)
    std::optional<Permutation> separator;    // a max-trace diagonal beating frobenius_sq
    GapReport gap;
};

inline Classification classify3(const DoublyStochastic& a) {
    if (a.order() != 3)
        throw DomainError(ErrorCode::WrongOrder, "classify3 needs a 3x3 matrix, got n = " + std::to_string(a.order()));
    Classification out;
    out.gap = marcus_ree_gap(a);
    for (CanonicalTag tag : kCanonicalTags) {
        if (auto w = permutation_equivalent(a.matrix(), canonical(tag).matrix())) {
            out.saturated = true;
            out.form = tag;
            out.witness = std::move(*w);
            break;
        }
    }
    if (out.saturated != out.gap.saturated)
        throw std::logic_error("classify3: canonical-form search and exact gap disagree");
    if (!out.saturated) out.separator = out.gap.argmax;
    return out;
}

/// Saturation for 2x2: [[t, 1-t], [1-t, t]] saturates iff t is 0, 1/2 or 1.
inline bool classify2(const DoublyStochastic& a) {
    if (a.order() != 2)
        throw DomainError(ErrorCode::WrongOrder, "classify2 needs a 2x2 matrix, got n = " + std::to_string(a.order()));
    const Rational& t = a(0, 0);
    return t.is_zero() || t == Rational(1, 2) || t == Rational(1);
}

} // namespace dsm
