#pragma once

// Desk-scale experiments around the saturation question:
//
//  * enumerate_grid      every 3x3 DS matrix with entries in (1/d)Z, d <= 60
//  * remark3_trace_perm  products of two block-J forms and the permutation R
//                        with frobenius_sq(AB) == trace(AB R)
//  * search_products     seeded random block-J products, labelled
//  * rationality_probe   float search for saturating matrices followed by
//                        rational reconstruction and exact verification
//  * check_asymmetry     no PAQ is symmetric

#include "dsm/diagsum.hpp"
#include "dsm/doubly_stochastic.hpp"
#include "dsm/erdos3.hpp"
#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"
#include "dsm/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace dsm {

// ---------------------------------------------------------------------------
// Grid enumeration

inline constexpr std::int64_t kMaxGridDenominator = 60;

using GridCell = std::pair<std::size_t, std::size_t>;

/// Numerators (over d) of a 3x3 DS matrix, row-major.
using GridNumerators = std::array<std::int64_t, 9>;

namespace detail {

inline void require_grid_denominator(std::int64_t d) {
    if (d < 1) throw DomainError(ErrorCode::InvalidArgument, "denominator must be positive");
    if (d > kMaxGridDenominator)
        throw DomainError(ErrorCode::DenominatorTooLarge,
                          "denominator " + std::to_string(d) + " exceeds " + std::to_string(kMaxGridDenominator));
}

// All DS grid matrices with a00 == first, in lexicographic order of the free
// cells (a00, a01, a10, a11).  The other five cells are forced by the sums.
template <class Visit>
void visit_grid_slice(std::int64_t d, std::int64_t a00, Visit&& visit) {
    GridNumerators x{};
    x[0] = a00;
    for (std::int64_t a01 = 0; a01 <= d - a00; ++a01) {
        x[1] = a01;
        x[2] = d - a00 - a01;
        for (std::int64_t a10 = 0; a10 <= d - a00; ++a10) {
            x[3] = a10;
            x[6] = d - a00 - a10;
            // a11 range: a12 = d - a10 - a11 >= 0, a21 = d - a01 - a11 >= 0,
            // a22 = a00 + a01 + a10 + a11 - d >= 0.
            const std::int64_t lo = std::max<std::int64_t>(0, d - a00 - a01 - a10);
            const std::int64_t hi = std::min(d - a10, d - a01);
            for (std::int64_t a11 = lo; a11 <= hi; ++a11) {
                x[4] = a11;
                x[5] = d - a10 - a11;
                x[7] = d - a01 - a11;
                x[8] = a00 + a01 + a10 + a11 - d;
                visit(x);
            }
        }
    }
}

inline bool grid_saturates(const GridNumerators& x, std::int64_t d) {
    std::int64_t frob = 0;
    for (std::int64_t e : x) frob += e * e;
    static constexpr std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::int64_t best = 0;
    for (const auto& p : perms) best = std::max(best, x[p[0]] + x[3 + p[1]] + x[6 + p[2]]);
    return frob == d * best;
}

} // namespace detail

inline RatMatrix grid_matrix(const GridNumerators& x, std::int64_t d) {
    RatMatrix m(3);
    for (std::size_t k = 0; k < 9; ++k) m(k / 3, k % 3) = Rational(x[k], d);
    return m;
}

/// Visit every 3x3 DS matrix with entries in (1/d)Z (as numerators), in
/// lexicographic order of (a00, a01, a10, a11).  With zero_cell set, only
/// matrices with that entry equal to 0 are visited.
inline void for_each_grid_matrix(std::int64_t d, std::optional<GridCell> zero_cell,
                                 const std::function<void(const GridNumerators&)>& visit) {
    detail::require_grid_denominator(d);
    for (std::int64_t a00 = 0; a00 <= d; ++a00)
        detail::visit_grid_slice(d, a00, [&](const GridNumerators& x) {
            if (zero_cell && x[zero_cell->first * 3 + zero_cell->second] != 0) return;
            visit(x);
        });
}

struct SaturatingMatrix {
    RatMatrix matrix;
    Classification classification;
};

struct EnumerationReport {
    std::int64_t denominator = 0;
    std::uint64_t total_candidates = 0;  // (d+1)^4 assignments of the free cells
    std::uint64_t ds_count = 0;
    std::vector<SaturatingMatrix> saturating;  // in enumeration order
};

/// Exhaustive saturation search on the (1/d)Z grid.  Slices a00 = 0..d are
/// distributed over `threads` workers and merged in slice order, so the
/// report does not depend on the thread count.
inline EnumerationReport enumerate_grid(std::int64_t d, std::optional<GridCell> zero_cell = std::nullopt,
                                        unsigned threads = 1) {
    detail::require_grid_denominator(d);
    const auto slices = static_cast<std::size_t>(d + 1);
    std::vector<std::uint64_t> counts(slices, 0);
    std::vector<std::vector<GridNumerators>> hits(slices);

    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t s = first; s < slices; s += stride) {
            detail::visit_grid_slice(d, static_cast<std::int64_t>(s), [&](const GridNumerators& x) {
                if (zero_cell && x[zero_cell->first * 3 + zero_cell->second] != 0) return;
                ++counts[s];
                if (detail::grid_saturates(x, d)) hits[s].push_back(x);
            });
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(slices)));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }

    EnumerationReport out;
    out.denominator = d;
    const auto side = static_cast<std::uint64_t>(d + 1);
    out.total_candidates = side * side * side * side;
    for (std::size_t s = 0; s < slices; ++s) {
        out.ds_count += counts[s];
        for (const auto& x : hits[s]) {
            auto ds = validate_ds(grid_matrix(x, d));
            Classification c = classify3(ds);
            out.saturating.push_back({ds.matrix(), std::move(c)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block-J products

struct BlockJSpec {
    Permutation p;
    std::vector<std::size_t> parts;
    Permutation q;

    DoublyStochastic build() const { return block_j_form(p, parts, q); }
};

struct ProductProbe {
    BlockJSpec left, right;
    RatMatrix product;
    Rational frob_sq;
    Rational max_trace;
    Permutation trace_perm;  // R with frobenius_sq(AB) == trace(AB R)
    bool identity_holds = false;
    bool saturates = false;
};

/// For A = P1 A' Q1 and B = P2 B' Q2 with A', B' block-J, the matrix
/// R = (P1 Q1 P2 Q2)^T satisfies frobenius_sq(AB) == trace(AB R).  Builds AB,
/// checks that identity exactly and reports whether AB saturates.
inline ProductProbe remark3_trace_perm(const BlockJSpec& a_spec, const BlockJSpec& b_spec) {
    if (a_spec.p.size() != b_spec.p.size())
        throw DomainError(ErrorCode::SizeMismatch, "block-J factors of different order");
    const DoublyStochastic a = a_spec.build();
    const DoublyStochastic b = b_spec.build();
    const RatMatrix ab = a.matrix() * b.matrix();

    ProductProbe out{a_spec, b_spec, ab, frobenius_sq(ab), {}, {}, false, false};
    const RatMatrix chain = permutation_matrix(a_spec.p) * permutation_matrix(a_spec.q) *
                            permutation_matrix(b_spec.p) * permutation_matrix(b_spec.q);
    const RatMatrix r = chain.transpose();
    out.trace_perm = (a_spec.p * a_spec.q * b_spec.p * b_spec.q).inverse();
    out.identity_holds = out.frob_sq == (ab * r).trace() && r == permutation_matrix(out.trace_perm);

    GapReport gap = marcus_ree_gap(ab);
    out.max_trace = gap.max_trace;
    out.saturates = gap.saturated;
    return out;
}

inline constexpr std::size_t kMaxProductOrder = 12;

inline BlockJSpec random_block_j_spec(std::size_t n, std::size_t max_parts, Rng& rng) {
    BlockJSpec s;
    s.p = rng.permutation(n);
    const std::size_t r = static_cast<std::size_t>(rng.between(1, std::min(max_parts, n)));
    // r - 1 distinct cut points among 1..n-1.
    std::vector<std::size_t> cuts(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) cuts[i] = i + 1;
    for (std::size_t i = cuts.size(); i > 1; --i) std::swap(cuts[i - 1], cuts[rng.below(i)]);
    cuts.resize(r - 1);
    std::sort(cuts.begin(), cuts.end());
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        s.parts.push_back(c - prev);
        prev = c;
    }
    s.parts.push_back(n - prev);
    s.q = rng.permutation(n);
    return s;
}

/// Seeded sample of block-J products of order n, each labelled with its
/// saturation status.
inline std::vector<ProductProbe> search_products(std::size_t n, std::size_t max_parts, std::size_t samples,
                                                 std::uint64_t seed) {
    if (n == 0 || n > kMaxProductOrder)
        throw DomainError(ErrorCode::OrderTooLarge, "product search supports 1 <= n <= 12");
    if (max_parts == 0) throw DomainError(ErrorCode::InvalidArgument, "max_parts must be positive");
    Rng rng(seed);
    std::vector<ProductProbe> out;
    out.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        BlockJSpec a = random_block_j_spec(n, max_parts, rng);
        BlockJSpec b = random_block_j_spec(n, max_parts, rng);
        out.push_back(remark3_trace_perm(a, b));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rationality probe

struct SinkhornResult {
    FloatMatrix matrix;
    std::size_t iterations;
    bool converged;
};

/// Alternate row and column normalization until every row and column sum is
/// within tol of 1 or max_iterations is reached.
inline SinkhornResult sinkhorn(FloatMatrix m, double tol = 1e-12, std::size_t max_iterations = 10000) {
    const std::size_t n = m.order();
    auto deviation = [&] {
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double rs = 0, cs = 0;
            for (std::size_t j = 0; j < n; ++j) {
                rs += m(i, j);
                cs += m(j, i);
            }
            worst = std::max({worst, std::abs(rs - 1), std::abs(cs - 1)});
        }
        return worst;
    };
    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
        if (deviation() < tol) return {std::move(m), it, true};
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m(i, j);
            if (s > 0)
                for (std::size_t j = 0; j < n; ++j) m(i, j) /= s;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += m(i, j);
            if (s > 0)
                for (std::size_t i = 0; i < n; ++i) m(i, j) /= s;
        }
    }
    const bool ok = deviation() < tol;
    return {std::move(m), it, ok};
}

inline constexpr std::int64_t kReconstructionDenominatorCap = 1000000;

/// Last continued-fraction convergent of x whose denominator is <= max_den.
inline Rational reconstruct_rational(double x, std::int64_t max_den = kReconstructionDenominatorCap) {
    const bool negative = x < 0;
    double y = negative ? -x : x;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int step = 0; step < 64; ++step) {
        const double fl = std::floor(y);
        if (fl > static_cast<double>(max_den) * 4 && k1 != 0) break;
        const auto a = static_cast<std::int64_t>(fl);
        const std::int64_t k2 = a * k1 + k0;
        if (k2 > max_den) break;
        const std::int64_t h2 = a * h1 + h0;
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
        const double frac = y - fl;
        if (frac < 1e-18) break;
        y = 1 / frac;
    }
    if (k1 == 0) return Rational(0);
    Rational r(h1, k1);
    return negative ? -r : r;
}

enum class ProbeSource { Sinkhorn, Mixture, Extra };
enum class ProbeVerdict { Verified, NotDoublyStochastic, NotSaturating };

inline const char* to_string(ProbeSource s) {
    switch (s) {
    case ProbeSource::Sinkhorn: return "sinkhorn";
    case ProbeSource::Mixture: return "mixture";
    case ProbeSource::Extra: return "extra";
    }
    return "?";
}

inline const char* to_string(ProbeVerdict v) {
    switch (v) {
    case ProbeVerdict::Verified: return "verified";
    case ProbeVerdict::NotDoublyStochastic: return "not_doubly_stochastic";
    case ProbeVerdict::NotSaturating: return "not_saturating";
    }
    return "?";
}

struct ProbeFinding {
    std::size_t index;  // sample index; extras follow the generated samples
    ProbeSource source;
    double float_gap;
    RatMatrix reconstructed;
    ProbeVerdict verdict;
    std::optional<CanonicalTag> form;  // n = 3 and verified
};

struct ProbeOptions {
    std::size_t n = 3;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    bool sinkhorn_samples = true;
    bool mixture_samples = true;
    std::vector<FloatMatrix> extra;  // Sinkhorn-normalized, then probed like the rest
};

struct ProbeReport {
    ProbeOptions options;
    std::size_t candidates = 0;
    std::size_t near_saturating = 0;
    std::size_t verified = 0;
    std::vector<ProbeFinding> findings;
};

/// Seeded float search for saturating matrices.  Samples alternate between
/// Sinkhorn-normalized random positive matrices and float convex
/// combinations of 1..n random permutation matrices (either family can be
/// switched off).  Any candidate with float gap
/// below tol is reconstructed entrywise by continued fractions and checked
/// exactly.
inline ProbeReport rationality_probe(const ProbeOptions& opt) {
    if (opt.n == 0) throw DomainError(ErrorCode::InvalidArgument, "order must be positive");
    const std::size_t n = opt.n;
    Rng rng(opt.seed);
    ProbeReport rep;
    rep.options = opt;

    auto probe = [&](std::size_t index, ProbeSource src, const FloatMatrix& m) {
        ++rep.candidates;
        const double gap = max_trace_value(m) - frobenius_sq(m);
        if (!(gap < opt.tol)) return;
        ++rep.near_saturating;
        RatMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) = reconstruct_rational(m(i, j));
        ProbeFinding f{index, src, gap, r, ProbeVerdict::Verified, std::nullopt};
        if (check_ds(r)) {
            f.verdict = ProbeVerdict::NotDoublyStochastic;
        } else if (!marcus_ree_gap(r).saturated) {
            f.verdict = ProbeVerdict::NotSaturating;
        } else {
            ++rep.verified;
            if (n == 3) f.form = classify3(validate_ds(r)).form;
        }
        rep.findings.push_back(std::move(f));
    };

    std::vector<ProbeSource> kinds;
    if (opt.sinkhorn_samples) kinds.push_back(ProbeSource::Sinkhorn);
    if (opt.mixture_samples) kinds.push_back(ProbeSource::Mixture);

    for (std::size_t s = 0; s < opt.samples && !kinds.empty(); ++s) {
        if (kinds[s % kinds.size()] == ProbeSource::Sinkhorn) {
            FloatMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = 1.0 - rng.unit();  // (0, 1]
            probe(s, ProbeSource::Sinkhorn, sinkhorn(std::move(m)).matrix);
        } else {
            const std::size_t k = static_cast<std::size_t>(rng.between(1, n));
            FloatMatrix m(n, 0.0);
            std::vector<std::pair<Permutation, double>> terms;
            double total = 0;
            for (std::size_t t = 0; t < k; ++t) {
                Permutation p = rng.permutation(n);
                const auto w = static_cast<double>(rng.between(1, 1000));
                terms.emplace_back(std::move(p), w);
                total += w;
            }
            for (const auto& [p, w] : terms)
                for (std::size_t i = 0; i < n; ++i) m(i, p[i]) += w / total;
            probe(s, ProbeSource::Mixture, m);
        }
    }
    for (std::size_t e = 0; e < opt.extra.size(); ++e) {
        if (opt.extra[e].order() != n) throw DomainError(ErrorCode::SizeMismatch, "extra candidate of wrong order");
        probe(opt.samples + e, ProbeSource::Extra, sinkhorn(opt.extra[e]).matrix);
    }
    return rep;
}

/// Entrywise positive perturbation of a: a(i,j) + magnitude * U(0,1).
inline FloatMatrix perturb(const RatMatrix& a, double magnitude, std::uint64_t seed) {
    Rng rng(seed);
    FloatMatrix m = a.cast<double>();
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = 0; j < m.order(); ++j) m(i, j) += magnitude * rng.unit();
    return m;
}

// ---------------------------------------------------------------------------
// Asymmetry

inline constexpr std::size_t kAsymmetryCap = 6;

/// True iff no pair of permutation matrices P, Q makes PAQ symmetric.
inline bool check_asymmetry(const DoublyStochastic& a) {
    const std::size_t n = a.order();
    if (n > kAsymmetryCap) throw DomainError(ErrorCode::OrderTooLarge, "asymmetry search is capped at n = 6");
    const auto perms = all_permutations(n);
    std::vector<Permutation> inverses;
    for (const auto& q : perms) inverses.push_back(q.inverse());
    for (const auto& p : perms) {
        for (const auto& qi : inverses) {
            // (PAQ)(i, k) = a(p(i), q^-1(k))
            bool symmetric = true;
            for (std::size_t i = 0; i < n && symmetric; ++i)
                for (std::size_t k = i + 1; k < n && symmetric; ++k)
                    symmetric = a(p[i], qi[k]) == a(p[k], qi[i]);
            if (symmetric) return false;
        }
    }
    return true;
}

} // namespace dsm
