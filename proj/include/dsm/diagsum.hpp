#pragma once

// Diagonal quantities of square matrices: Frobenius norm squared, diagonal
// sums and products, the maximal trace (best diagonal sum), the permanent,
// and the Marcus-Ree gap max_trace - frobenius_sq.
//
// Every maximizer reported here is the lexicographically smallest
// permutation attaining the maximum.

#include "dsm/detail/hungarian.hpp"
#include "dsm/doubly_stochastic.hpp"
#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"
#include "dsm/rational.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dsm {

inline constexpr std::size_t kBruteForceCap = 10;
inline constexpr std::size_t kPermanentCap = 20;
// marcus_ree_gap switches from enumeration to the assignment solver above this.
inline constexpr std::size_t kBruteForceAuto = 8;

enum class TraceMethod { BruteForce, Assignment };

inline const char* to_string(TraceMethod m) { return m == TraceMethod::BruteForce ? "brute" : "assignment"; }

struct TraceReport {
    Rational max_value;
    Permutation argmax;
    TraceMethod method;
};

struct GapReport {
    Rational frob_sq;
    Rational max_trace;
    Rational gap;
    bool saturated;
    Permutation argmax;
};

template <class T>
T frobenius_sq(const Matrix<T>& a) {
    T s(0);
    for (const T& x : a.data()) s += x * x;
    return s;
}

template <class T>
T diagonal_sum(const Matrix<T>& a, const Permutation& p) {
    if (p.size() != a.order()) throw DomainError(ErrorCode::SizeMismatch, "permutation size differs from matrix order");
    T s(0);
    for (std::size_t i = 0; i < a.order(); ++i) s += a(i, p[i]);
    return s;
}

template <class T>
T diagonal_product(const Matrix<T>& a, const Permutation& p) {
    if (p.size() != a.order()) throw DomainError(ErrorCode::SizeMismatch, "permutation size differs from matrix order");
    T s(1);
    for (std::size_t i = 0; i < a.order(); ++i) s *= a(i, p[i]);
    return s;
}

namespace detail {

// Depth-first walk of all permutations in lexicographic order (row by row,
// columns ascending) keeping the first strict maximum of a fold over the
// chosen entries.
template <class V, class Op>
class LexFirstMax {
public:
    LexFirstMax(const Matrix<V>& m, Op op) : m_(m), op_(op), cur_(m.order()) {}

    std::pair<V, std::vector<std::size_t>> run(const V& unit) {
        visit(0, unit, 0);
        return {*best_, best_perm_};
    }

private:
    void visit(std::size_t row, const V& acc, std::uint32_t used) {
        const std::size_t n = m_.order();
        if (row == n) {
            if (!best_ || *best_ < acc) {
                best_ = acc;
                best_perm_ = cur_;
            }
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used >> j & 1u) continue;
            cur_[row] = j;
            visit(row + 1, op_(acc, m_(row, j)), used | (1u << j));
        }
    }

    const Matrix<V>& m_;
    Op op_;
    std::vector<std::size_t> cur_;
    std::optional<V> best_;
    std::vector<std::size_t> best_perm_;
};

struct ScaledIntegers {
    Matrix<BigInt> entries;  // a(i,j) * scale
    BigInt scale;            // lcm of all denominators
};

inline ScaledIntegers scale_to_integers(const RatMatrix& a) {
    BigInt scale(1);
    for (const auto& x : a.data()) scale = lcm(scale, x.denominator());
    Matrix<BigInt> m(a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) m(i, j) = a(i, j).numerator() * (scale / a(i, j).denominator());
    return {std::move(m), std::move(scale)};
}

inline void require_order_at_most(const RatMatrix& a, std::size_t cap, const char* what) {
    if (a.order() > cap)
        throw DomainError(ErrorCode::OrderTooLarge, std::string(what) + " is capped at n = " + std::to_string(cap) +
                                                        ", got n = " + std::to_string(a.order()));
    if (a.order() == 0) throw DomainError(ErrorCode::InvalidArgument, "empty matrix");
}

} // namespace detail

/// Exact maximum diagonal sum by enumerating all n! permutations.
inline TraceReport max_trace_brute(const RatMatrix& a, std::size_t cap = kBruteForceCap) {
    detail::require_order_at_most(a, std::min<std::size_t>(cap, 31), "brute-force max trace");
    const std::size_t n = a.order();
    auto scaled = detail::scale_to_integers(a);

    // Sums of n scaled entries fit a machine word in all realistic cases.
    BigInt limit(std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(n + 1));
    bool small = true;
    for (const auto& x : scaled.entries.data())
        if (abs(x) > limit) small = false;

    std::vector<std::size_t> perm;
    BigInt best;
    if (small) {
        Matrix<std::int64_t> m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = scaled.entries(i, j).get_si();
        auto plus = [](std::int64_t s, std::int64_t x) { return s + x; };
        auto [v, p] = detail::LexFirstMax<std::int64_t, decltype(plus)>(m, plus).run(0);
        best = BigInt(static_cast<long>(v));
        perm = std::move(p);
    } else {
        auto plus = [](const BigInt& s, const BigInt& x) -> BigInt { return s + x; };
        auto [v, p] = detail::LexFirstMax<BigInt, decltype(plus)>(scaled.entries, plus).run(BigInt(0));
        best = v;
        perm = std::move(p);
    }
    return {Rational(best, scaled.scale), Permutation(std::move(perm)), TraceMethod::BruteForce};
}

/// Exact maximum diagonal sum via the Hungarian method in rational
/// arithmetic.  The maximizer is then moved to the lexicographically smallest
/// optimal permutation: with optimal potentials fixed, a permutation is
/// optimal iff it uses only tight pairs (complementary slackness), which
/// reduces tie-breaking to a lexicographically smallest perfect matching.
inline TraceReport max_trace_assignment(const RatMatrix& a) {
    const std::size_t n = a.order();
    if (n == 0) throw DomainError(ErrorCode::InvalidArgument, "empty matrix");
    RatMatrix cost(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost(i, j) = -a(i, j);
    auto sol = detail::min_cost_assignment(cost);

    std::vector<std::vector<bool>> tight(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tight[i][j] = (cost(i, j) - sol.row_pot[i] - sol.col_pot[j]).is_zero();

    Permutation argmax(detail::lex_min_perfect_matching(tight, sol.row_to_col));
    return {diagonal_sum(a, argmax), std::move(argmax), TraceMethod::Assignment};
}

/// Brute force up to kBruteForceAuto, assignment solver beyond.
inline TraceReport max_trace(const RatMatrix& a) {
    return a.order() <= kBruteForceAuto ? max_trace_brute(a) : max_trace_assignment(a);
}

/// Floating-point maximum diagonal sum (value only).
inline double max_trace_value(const FloatMatrix& a) {
    const std::size_t n = a.order();
    if (n <= kBruteForceAuto) {
        auto plus = [](double s, double x) { return s + x; };
        return detail::LexFirstMax<double, decltype(plus)>(a, plus).run(0.0).first;
    }
    FloatMatrix cost(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost(i, j) = -a(i, j);
    auto sol = detail::min_cost_assignment(cost);
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a(i, sol.row_to_col[i]);
    return s;
}

/// Exact maximum diagonal product and its lexicographically smallest maximizer.
inline std::pair<Rational, Permutation> max_diag_product(const RatMatrix& a, std::size_t cap = kBruteForceCap) {
    detail::require_order_at_most(a, std::min<std::size_t>(cap, 31), "max diagonal product");
    auto scaled = detail::scale_to_integers(a);
    auto times = [](const BigInt& s, const BigInt& x) -> BigInt { return s * x; };
    auto [v, p] = detail::LexFirstMax<BigInt, decltype(times)>(scaled.entries, times).run(BigInt(1));
    BigInt den(1);
    for (std::size_t i = 0; i < a.order(); ++i) den *= scaled.scale;
    return {Rational(v, den), Permutation(std::move(p))};
}

/// Ryser's inclusion-exclusion formula walked in Gray-code order, on the
/// matrix scaled to integers so the inner loop is pure integer arithmetic.
inline Rational permanent(const RatMatrix& a, std::size_t cap = kPermanentCap) {
    detail::require_order_at_most(a, std::min<std::size_t>(cap, 62), "permanent");
    const std::size_t n = a.order();
    auto scaled = detail::scale_to_integers(a);
    const auto& m = scaled.entries;

    std::vector<BigInt> row_sum(n, BigInt(0));
    BigInt total(0), prod;
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        const bool added = (gray & bit) != 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (added) row_sum[i] += m(i, static_cast<std::size_t>(j));
            else row_sum[i] -= m(i, static_cast<std::size_t>(j));
        }
        prod = 1;
        for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= row_sum[i];
        const bool positive = ((n - static_cast<std::size_t>(std::popcount(gray))) % 2) == 0;
        if (positive) total += prod;
        else total -= prod;
    }
    BigInt den(1);
    for (std::size_t i = 0; i < n; ++i) den *= scaled.scale;
    return Rational(total, den);
}

inline GapReport marcus_ree_gap(const RatMatrix& a) {
    Rational frob = frobenius_sq(a);
    TraceReport t = max_trace(a);
    Rational gap = t.max_value - frob;
    const bool saturated = gap.is_zero();
    return {std::move(frob), std::move(t.max_value), std::move(gap), saturated, std::move(t.argmax)};
}

inline GapReport marcus_ree_gap(const DoublyStochastic& a) { return marcus_ree_gap(a.matrix()); }

} // namespace dsm
