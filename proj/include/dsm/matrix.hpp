#pragma once

// Dense square matrices over an arbitrary scalar and permutations of
// {0, ..., n-1}.  Storage is row-major; indices are 0-based.

#include "dsm/errors.hpp"
#include "dsm/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace dsm {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
        std::vector<bool> seen(map_.size(), false);
        for (std::size_t x : map_) {
            if (x >= map_.size() || seen[x])
                throw DomainError(ErrorCode::InvalidArgument, "Permutation: not a bijection on {0..n-1}");
            seen[x] = true;
        }
    }

    Permutation(std::initializer_list<std::size_t> map) : Permutation(std::vector<std::size_t>(map)) {}

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.map_.resize(n);
        std::iota(p.map_.begin(), p.map_.end(), std::size_t{0});
        return p;
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        Permutation out;
        out.map_.resize(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i) out.map_[map_[i]] = i;
        return out;
    }

    /// Advance to the next permutation in lexicographic order.  Returns false
    /// (and wraps to the identity) after the last one.
    bool next() { return std::next_permutation(map_.begin(), map_.end()); }

    /// Left-to-right composition: (p * q)(i) = q(p(i)).  With this order
    /// permutation_matrix(p * q) == permutation_matrix(p) * permutation_matrix(q).
    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.size() != q.size())
            throw DomainError(ErrorCode::SizeMismatch, "composing permutations of different sizes");
        Permutation out;
        out.map_.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out.map_[i] = q.map_[p.map_[i]];
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

/// All permutations of size n in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> out;
    Permutation p = Permutation::identity(n);
    do {
        out.push_back(p);
    } while (p.next());
    return out;
}

template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    explicit Matrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& r : rows) {
            if (r.size() != n_) throw DomainError(ErrorCode::NotSquare, "row length differs from row count");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw DomainError(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.n_));
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t order() const noexcept { return n_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
    std::span<const T> data() const noexcept { return data_; }

    Matrix transpose() const {
        Matrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    T trace() const {
        T s(0);
        for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(i, j) = convert<U>((*this)(i, j));
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw DomainError(ErrorCode::SizeMismatch, "matrix product of different orders");
        const std::size_t n = a.n_;
        Matrix out(n, T(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw DomainError(ErrorCode::SizeMismatch, "matrix sum of different orders");
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
        return out;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix out = a;
        for (auto& x : out.data_) x = s * x;
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

    /// Total order (by order, then row-major entries) so matrices can key
    /// ordered containers.
    friend bool operator<(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
    }

private:
    template <class U, class V>
    static U convert(const V& v) {
        if constexpr (std::is_same_v<V, Rational> && std::is_same_v<U, double>) return v.to_double();
        else return U(v);
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

/// Build a rational matrix from fraction strings, e.g. {{"3/5","0","2/5"},...}.
inline RatMatrix rat_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<std::vector<Rational>> out;
    for (const auto& r : rows) {
        out.emplace_back();
        for (const char* s : r) out.back().push_back(Rational::parse(s));
    }
    return RatMatrix::from_rows(out);
}

/// 0/1 matrix with a 1 at (i, p(i)).
template <class T = Rational>
Matrix<T> permutation_matrix(const Permutation& p) {
    Matrix<T> m(p.size(), T(0));
    for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) = T(1);
    return m;
}

/// P * a * Q for P = permutation_matrix(p), Q = permutation_matrix(q),
/// computed by index shuffling: (PAQ)(i, q(j)) = a(p(i), j).
template <class T>
Matrix<T> permute(const Matrix<T>& a, const Permutation& p, const Permutation& q) {
    const std::size_t n = a.order();
    if (p.size() != n || q.size() != n)
        throw DomainError(ErrorCode::SizeMismatch, "permutation size differs from matrix order");
    Matrix<T> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, q[j]) = a(p[i], j);
    return out;
}

} // namespace dsm
