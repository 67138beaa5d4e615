#pragma once

// Doubly stochastic matrices: exact validation and the standard
// constructions (J_n, T_n, direct sums, permutation matrices, block-J
// forms, seeded random points of the Birkhoff polytope).

#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"
#include "dsm/random.hpp"
#include "dsm/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsm {

/// First violated constraint found by check_ds, scanning entries row-major,
/// then row sums, then column sums.
struct DsViolation {
    ErrorCode kind;   // NegativeEntry, RowSumMismatch or ColSumMismatch
    std::size_t row;  // unused for ColSumMismatch
    std::size_t col;  // unused for RowSumMismatch
    Rational actual;  // the offending entry or sum

    std::string describe() const {
        switch (kind) {
        case ErrorCode::NegativeEntry:
            return "entry (" + std::to_string(row) + "," + std::to_string(col) + ") = " + actual.str() + " < 0";
        case ErrorCode::RowSumMismatch:
            return "row " + std::to_string(row) + " sums to " + actual.str();
        default:
            return "column " + std::to_string(col) + " sums to " + actual.str();
        }
    }
};

class InvalidDoublyStochastic : public DomainError {
public:
    explicit InvalidDoublyStochastic(DsViolation v) : DomainError(v.kind, v.describe()), violation_(std::move(v)) {}
    const DsViolation& violation() const noexcept { return violation_; }

private:
    DsViolation violation_;
};

// First violation: negative entries, then column sums, then row sums.
inline std::optional<DsViolation> check_ds(const RatMatrix& m) {
    const std::size_t n = m.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j).sign() < 0) return DsViolation{ErrorCode::NegativeEntry, i, j, m(i, j)};
    const Rational one(1);
    for (std::size_t j = 0; j < n; ++j) {
        Rational s;
        for (std::size_t i = 0; i < n; ++i) s += m(i, j);
        if (s != one) return DsViolation{ErrorCode::ColSumMismatch, 0, j, s};
    }
    for (std::size_t i = 0; i < n; ++i) {
        Rational s;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        if (s != one) return DsViolation{ErrorCode::RowSumMismatch, i, 0, s};
    }
    return std::nullopt;
}

/// A RatMatrix known to be doubly stochastic.  Only validate_ds creates one.
class DoublyStochastic {
public:
    const RatMatrix& matrix() const noexcept { return m_; }
    std::size_t order() const noexcept { return m_.order(); }
    const Rational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    friend bool operator==(const DoublyStochastic& a, const DoublyStochastic& b) { return a.m_ == b.m_; }

    friend DoublyStochastic validate_ds(RatMatrix m);

private:
    explicit DoublyStochastic(RatMatrix m) : m_(std::move(m)) {}
    RatMatrix m_;
};

/// Throws InvalidDoublyStochastic naming the first violated constraint.
inline DoublyStochastic validate_ds(RatMatrix m) {
    if (auto v = check_ds(m)) throw InvalidDoublyStochastic(*v);
    return DoublyStochastic(std::move(m));
}

inline DoublyStochastic make_jn(std::size_t n) {
    if (n == 0) throw DomainError(ErrorCode::InvalidArgument, "J_n needs n >= 1");
    return validate_ds(RatMatrix(n, Rational(1, static_cast<long>(n))));
}

/// (n J_n - I_n) / (n - 1): zero diagonal, 1/(n-1) elsewhere.
inline DoublyStochastic make_tn(std::size_t n) {
    if (n < 2) throw DomainError(ErrorCode::InvalidArgument, "T_n needs n >= 2");
    RatMatrix m(n, Rational(1, static_cast<long>(n - 1)));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(0);
    return validate_ds(std::move(m));
}

inline DoublyStochastic identity_ds(std::size_t n) { return validate_ds(RatMatrix::identity(n)); }

inline DoublyStochastic direct_sum(const DoublyStochastic& a, const DoublyStochastic& b) {
    const std::size_t na = a.order(), n = a.order() + b.order();
    RatMatrix m(n, Rational(0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.order(); ++i)
        for (std::size_t j = 0; j < b.order(); ++j) m(na + i, na + j) = b(i, j);
    return validate_ds(std::move(m));
}

inline DoublyStochastic perm_matrix(const Permutation& p) { return validate_ds(permutation_matrix<Rational>(p)); }

/// The product of doubly stochastic matrices is doubly stochastic.
inline DoublyStochastic product(const DoublyStochastic& a, const DoublyStochastic& b) {
    return validate_ds(a.matrix() * b.matrix());
}

inline DoublyStochastic permute(const DoublyStochastic& a, const Permutation& p, const Permutation& q) {
    return validate_ds(permute(a.matrix(), p, q));
}

/// P (J_{n1} + ... + J_{nr}) Q with P, Q the permutation matrices of p, q.
inline DoublyStochastic block_j_form(const Permutation& p, const std::vector<std::size_t>& parts,
                                     const Permutation& q) {
    std::size_t n = 0;
    for (std::size_t k : parts) {
        if (k == 0) throw DomainError(ErrorCode::InvalidArgument, "block sizes must be positive");
        n += k;
    }
    if (n != p.size() || n != q.size())
        throw DomainError(ErrorCode::SizeMismatch, "block sizes sum to " + std::to_string(n) +
                                                       " but permutations have size " + std::to_string(p.size()) +
                                                       "/" + std::to_string(q.size()));
    RatMatrix blocks(n, Rational(0));
    std::size_t off = 0;
    for (std::size_t k : parts) {
        const Rational e(1, static_cast<long>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) blocks(off + i, off + j) = e;
        off += k;
    }
    return validate_ds(permute(blocks, p, q));
}

/// Seeded convex combination sum_i lambda_i P_i of k random permutation
/// matrices.  Weights are k integers drawn from [1, 1000] normalized by their
/// sum, so the result is exact.
inline DoublyStochastic random_ds(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (n == 0) throw DomainError(ErrorCode::InvalidArgument, "order must be positive");
    if (k == 0) throw DomainError(ErrorCode::InvalidArgument, "need at least one permutation term");
    Rng rng(seed);
    std::vector<Permutation> perms;
    std::vector<long> weights;
    long total = 0;
    for (std::size_t t = 0; t < k; ++t) {
        perms.push_back(rng.permutation(n));
        weights.push_back(static_cast<long>(rng.between(1, 1000)));
        total += weights.back();
    }
    RatMatrix m(n, Rational(0));
    for (std::size_t t = 0; t < k; ++t) {
        const Rational lambda(weights[t], total);
        for (std::size_t i = 0; i < n; ++i) m(i, perms[t][i]) += lambda;
    }
    return validate_ds(std::move(m));
}

} // namespace dsm
