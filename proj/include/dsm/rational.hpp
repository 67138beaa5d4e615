#pragma once

// Exact rational scalar backed by GMP.
//
// Values are always canonical: the denominator is positive and coprime to
// the numerator, zero is 0/1.  Nothing here ever rounds.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsm {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I n) : q_(static_cast<long>(n)) {}

    template <std::unsigned_integral I>
    Rational(I n) : q_(static_cast<unsigned long>(n)) {}

    explicit Rational(const BigInt& n) : q_(n) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        q_.get_num() = num;
        q_.get_den() = den;
        q_.canonicalize();
    }

    template <std::integral A, std::integral B>
    Rational(A num, B den) : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

    /// Strict parser for "p", "-p", "p/q" with optional surrounding blanks.
    /// Decimal points, exponents, empty strings and zero denominators are
    /// rejected; returns nullopt instead of throwing.
    static std::optional<Rational> try_parse(std::string_view text) {
        auto is_blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
        while (!text.empty() && is_blank(text.front())) text.remove_prefix(1);
        while (!text.empty() && is_blank(text.back())) text.remove_suffix(1);

        auto valid_int = [](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };

        auto slash = text.find('/');
        std::string_view num_part = text.substr(0, slash);
        std::string_view den_part = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
        if (!valid_int(num_part, true)) return std::nullopt;
        if (slash != std::string_view::npos && !valid_int(den_part, false)) return std::nullopt;

        std::string num_str(num_part);
        if (num_str.front() == '+') num_str.erase(0, 1);
        BigInt num(num_str, 10);
        BigInt den(1);
        if (slash != std::string_view::npos) {
            den = BigInt(std::string(den_part), 10);
            if (den == 0) return std::nullopt;
        }
        return Rational(num, den);
    }

    static Rational parse(std::string_view text) {
        auto r = try_parse(text);
        if (!r) throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
        return *r;
    }

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return from_raw(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    static Rational from_raw(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);
        r.q_.canonicalize();
        return r;
    }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Square root of r when r is the square of a rational, otherwise nullopt.
/// Since r is canonical this reduces to perfect-square tests on numerator
/// and denominator separately.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    BigInt num = r.numerator();
    BigInt den = r.denominator();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    BigInt sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rational(sn, sd);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

} // namespace dsm

template <>
struct std::hash<dsm::Rational> {
    std::size_t operator()(const dsm::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
