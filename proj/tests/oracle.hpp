#pragma once

// Reference implementations for the test suite.  Deliberately naive: plain
// loops over std::next_permutation, no scaling, no pruning, no shared code
// with the library beyond the Rational and Matrix value types.

#include "dsm/matrix.hpp"
#include "dsm/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using dsm::Rational;
using dsm::RatMatrix;

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

inline Rational permanent(const RatMatrix& a) {
    auto s = iota(a.order());
    Rational total;
    do {
        Rational term(1);
        for (std::size_t i = 0; i < s.size(); ++i) term *= a(i, s[i]);
        total += term;
    } while (std::next_permutation(s.begin(), s.end()));
    return total;
}

struct Best {
    Rational value;
    std::vector<std::size_t> argmax;
};

inline Best max_trace(const RatMatrix& a) {
    auto s = iota(a.order());
    Best best{Rational(-1), {}};
    bool first = true;
    do {
        Rational sum;
        for (std::size_t i = 0; i < s.size(); ++i) sum += a(i, s[i]);
        if (first || sum > best.value) best = {sum, s};
        first = false;
    } while (std::next_permutation(s.begin(), s.end()));
    return best;
}

inline Best max_product(const RatMatrix& a) {
    auto s = iota(a.order());
    Best best{Rational(-1), {}};
    do {
        Rational prod(1);
        for (std::size_t i = 0; i < s.size(); ++i) prod *= a(i, s[i]);
        if (prod > best.value) best = {prod, s};
    } while (std::next_permutation(s.begin(), s.end()));
    return best;
}

inline Rational frobenius_sq(const RatMatrix& a) {
    Rational s;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) s += a(i, j) * a(i, j);
    return s;
}

inline bool is_ds(const RatMatrix& a) {
    for (std::size_t i = 0; i < a.order(); ++i) {
        Rational r, c;
        for (std::size_t j = 0; j < a.order(); ++j) {
            if (a(i, j) < Rational(0)) return false;
            r += a(i, j);
            c += a(j, i);
        }
        if (r != Rational(1) || c != Rational(1)) return false;
    }
    return true;
}

// Number of 3x3 matrices of nonnegative integers with all line sums d.
inline std::uint64_t magic_square_count(std::uint64_t d) {
    auto choose = [](std::uint64_t n, std::uint64_t k) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    return choose(d + 2, 2) + 3 * choose(d + 3, 4);
}

// Doubly stochastic generator that does not go through dsm::random_ds:
// a convex combination of random permutation matrices drawn with
// std::shuffle and weights from a separate engine.
class DsGen {
public:
    explicit DsGen(std::uint64_t seed) : eng_(seed) {}

    RatMatrix next(std::size_t n, std::size_t terms) {
        RatMatrix m(n);
        std::vector<std::uint64_t> w(terms);
        std::uniform_int_distribution<std::uint64_t> dist(1, 60);
        std::uint64_t total = 0;
        for (auto& x : w) total += (x = dist(eng_));
        for (std::size_t t = 0; t < terms; ++t) {
            auto p = iota(n);
            std::shuffle(p.begin(), p.end(), eng_);
            for (std::size_t i = 0; i < n; ++i) m(i, p[i]) += Rational(w[t], total);
        }
        return m;
    }

    // Strictly positive: mix J_n in with a positive weight.
    RatMatrix positive(std::size_t n, std::size_t terms) {
        RatMatrix m = next(n, terms);
        std::uniform_int_distribution<std::uint64_t> dist(1, 9);
        const Rational lambda(dist(eng_), 10);
        RatMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) = lambda * Rational(1, n) + (Rational(1) - lambda) * m(i, j);
        return out;
    }

    std::uint64_t below(std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(eng_); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace oracle
