#pragma once

// The weak saturation problem for 3x3 doubly stochastic matrices:
// frobenius_sq(A) equal to some diagonal sum, not necessarily the largest.
//
// Up to row/column permutations such a matrix (other than J_3) has a zero at
// (1,0) and can be written in parameters (u, v, w):
//
//   [ (v+u+3)/4        w              (1-v-u)/4 - w ]
//   [ 0                (v-u+3)/4      (1-v+u)/4     ]
//   [ (1-v-u)/4        (1-v+u)/4 - w  (v+1)/2 + w   ]
//
// and frobenius_sq(A) - trace(A) equals the residual
//   4w^2 + (2v-1)w + (3u^2 + 5v^2 - 2v - 3)/8,
// whose roots are w = (1 - 2v -/+ sqrt(7 - 6u^2 - 6v^2)) / 8.  Whether the
// resulting matrix is doubly stochastic is decided by the regions U-/U+,
// which are cut from a disc E0 and three ellipses E1..E3 by polynomial
// inequalities and so are tested exactly.

#include "dsm/diagsum.hpp"
#include "dsm/doubly_stochastic.hpp"
#include "dsm/errors.hpp"
#include "dsm/matrix.hpp"
#include "dsm/rational.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace dsm {

struct RegionPoint {
    Rational u;
    Rational v;

    friend bool operator==(const RegionPoint&, const RegionPoint&) = default;
    friend auto operator<=>(const RegionPoint&, const RegionPoint&) = default;
};

enum class Ellipse { E1, E2, E3 };
enum class RootSign { Minus, Plus };

inline const char* to_string(RootSign s) { return s == RootSign::Minus ? "minus" : "plus"; }

inline bool in_disc_e0(const RegionPoint& p) { return 6 * p.u * p.u + 6 * p.v * p.v <= Rational(7); }

/// Left-hand side of the ellipse inequality scaled so that the solid ellipse
/// is lhs <= 16:
///   E1: 25(u + 1/5)^2 + 15 v^2,  E2: 25(u - 1/5)^2 + 15 v^2,
///   E3: 15 u^2 + 25(v - 1/5)^2.
inline Rational ellipse_lhs(Ellipse k, const RegionPoint& p) {
    const Rational fifth(1, 5);
    switch (k) {
    case Ellipse::E1: { Rational x = p.u + fifth; return 25 * x * x + 15 * p.v * p.v; }
    case Ellipse::E2: { Rational x = p.u - fifth; return 25 * x * x + 15 * p.v * p.v; }
    case Ellipse::E3: { Rational y = p.v - fifth; return 15 * p.u * p.u + 25 * y * y; }
    }
    return {};
}

inline bool in_ellipse(Ellipse k, const RegionPoint& p, bool strict_interior = false) {
    const Rational lhs = ellipse_lhs(k, p);
    return strict_interior ? lhs < Rational(16) : lhs <= Rational(16);
}

/// Parameter region for the minus root.
inline bool in_u_minus(const RegionPoint& p) {
    const Rational half(1, 2);
    if (!in_disc_e0(p)) return false;
    if (in_ellipse(Ellipse::E3, p, true)) return false;
    if (p.v > half) return false;
    if (p.u >= half && !in_ellipse(Ellipse::E2, p)) return false;
    if (p.u <= -half && !in_ellipse(Ellipse::E1, p)) return false;
    return true;
}

/// Parameter region for the plus root.  Contains the isolated point (0, 1).
inline bool in_u_plus(const RegionPoint& p) {
    const Rational half(1, 2);
    if (!in_disc_e0(p)) return false;
    if (abs(p.u) > half) return false;
    if (in_ellipse(Ellipse::E1, p, true)) return false;
    if (in_ellipse(Ellipse::E2, p, true)) return false;
    if (p.v >= half && !in_ellipse(Ellipse::E3, p)) return false;
    return true;
}

inline bool in_region(RootSign s, const RegionPoint& p) { return s == RootSign::Minus ? in_u_minus(p) : in_u_plus(p); }

struct SqrtKind {
    Rational discriminant;             // 7 - 6u^2 - 6v^2
    std::optional<Rational> exact_root;  // present iff discriminant is a rational square
};

inline SqrtKind sqrt_kind(const RegionPoint& p) {
    SqrtKind k{Rational(7) - 6 * p.u * p.u - 6 * p.v * p.v, std::nullopt};
    k.exact_root = exact_sqrt(k.discriminant);
    return k;
}

struct WeakFormParams {
    RegionPoint point;
    RootSign sign;
    SqrtKind root;
    std::optional<Rational> w;  // exact iff root.exact_root
    double w_approx;
};

/// Resolve w for the given root.  Throws NegativeDiscriminant outside E0.
inline WeakFormParams make_params(const RegionPoint& p, RootSign sign) {
    SqrtKind root = sqrt_kind(p);
    if (root.discriminant.sign() < 0)
        throw DomainError(ErrorCode::NegativeDiscriminant,
                          "7 - 6u^2 - 6v^2 = " + root.discriminant.str() + " at (" + p.u.str() + ", " + p.v.str() + ")");
    const Rational base = 1 - 2 * p.v;
    WeakFormParams out{p, sign, root, std::nullopt, 0.0};
    if (root.exact_root) {
        out.w = (sign == RootSign::Minus ? base - *root.exact_root : base + *root.exact_root) / 8;
        out.w_approx = out.w->to_double();
    } else {
        const double s = std::sqrt(root.discriminant.to_double());
        out.w_approx = (base.to_double() + (sign == RootSign::Minus ? -s : s)) / 8;
    }
    return out;
}

/// The parametrized matrix for arbitrary (u, v, w); no feasibility check.
template <class T>
Matrix<T> weak_form_matrix(const T& u, const T& v, const T& w) {
    Matrix<T> m(3, T(0));
    m(0, 0) = (v + u + T(3)) / T(4);
    m(0, 1) = w;
    m(0, 2) = (T(1) - v - u) / T(4) - w;
    m(1, 0) = T(0);
    m(1, 1) = (v - u + T(3)) / T(4);
    m(1, 2) = (T(1) - v + u) / T(4);
    m(2, 0) = (T(1) - v - u) / T(4);
    m(2, 1) = (T(1) - v + u) / T(4) - w;
    m(2, 2) = (v + T(1)) / T(2) + w;
    return m;
}

struct WeakFormMatrix {
    std::optional<RatMatrix> exact;  // when w is rational
    FloatMatrix approx;              // always filled
};

inline WeakFormMatrix build_weak_form(const WeakFormParams& q) {
    WeakFormMatrix out;
    if (q.w) {
        out.exact = weak_form_matrix(q.point.u, q.point.v, *q.w);
        out.approx = out.exact->cast<double>();
    } else {
        out.approx = weak_form_matrix(q.point.u.to_double(), q.point.v.to_double(), q.w_approx);
    }
    return out;
}

// Constraint each entry encodes in the (a, b, c) = (a11, a22, a12) form.
inline const char* weak_form_constraint(std::size_t r, std::size_t c) {
    static const char* names[3][3] = {{"a >= 0", "c >= 0", "a + c <= 1"},
                                      {"a21 = 0", "b >= 0", "b <= 1"},
                                      {"a <= 1", "b + c <= 1", "a + b + c >= 1"}};
    return names[r][c];
}

inline constexpr double kWeakFormTolerance = 1e-9;

/// First violated doubly stochastic constraint of a built matrix, or nullopt.
/// Exact when the matrix is exact, otherwise within `tol`.
inline std::optional<std::string> weak_form_violation(const WeakFormMatrix& m, double tol = kWeakFormTolerance) {
    if (m.exact) {
        if (auto v = check_ds(*m.exact)) {
            if (v->kind == ErrorCode::NegativeEntry)
                return std::string(weak_form_constraint(v->row, v->col)) + " (" + v->describe() + ")";
            return v->describe();
        }
        return std::nullopt;
    }
    const FloatMatrix& a = m.approx;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (!(a(i, j) >= -tol)) return std::string(weak_form_constraint(i, j)) + " (entry = " + std::to_string(a(i, j)) + ")";
    for (std::size_t i = 0; i < 3; ++i) {
        double rs = 0, cs = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            rs += a(i, j);
            cs += a(j, i);
        }
        if (std::abs(rs - 1) > tol) return "row " + std::to_string(i) + " sum";
        if (std::abs(cs - 1) > tol) return "column " + std::to_string(i) + " sum";
    }
    return std::nullopt;
}

struct ValidatedWeakForm {
    std::optional<DoublyStochastic> exact;
    FloatMatrix approx;
};

/// Build and validate.  Throws NotDoublyStochastic naming the violated
/// constraint.
inline ValidatedWeakForm params_to_matrix(const WeakFormParams& q, double tol = kWeakFormTolerance) {
    WeakFormMatrix m = build_weak_form(q);
    if (auto v = weak_form_violation(m, tol))
        throw DomainError(ErrorCode::NotDoublyStochastic, "at (" + q.point.u.str() + ", " + q.point.v.str() + ", " +
                                                              to_string(q.sign) + "): " + *v);
    ValidatedWeakForm out{std::nullopt, std::move(m.approx)};
    if (m.exact) out.exact = validate_ds(std::move(*m.exact));
    return out;
}

inline ValidatedWeakForm params_to_matrix(const RegionPoint& p, RootSign s) { return params_to_matrix(make_params(p, s)); }

/// Constructive feasibility: the matrix for (p, s) exists and is doubly
/// stochastic.  Independent of the region predicates.
inline bool weak_form_feasible(const RegionPoint& p, RootSign s, double tol = kWeakFormTolerance) {
    if (sqrt_kind(p).discriminant.sign() < 0) return false;
    return !weak_form_violation(build_weak_form(make_params(p, s)), tol);
}

struct WeakFormCoordinates {
    Rational u, v, w;
};

/// Inverse of the parametrization: u = 2(a00 - a11), v = 2(a00 + a11) - 3,
/// w = a01.  Requires a(1,0) == 0.
inline WeakFormCoordinates matrix_to_params(const DoublyStochastic& a) {
    if (a.order() != 3) throw DomainError(ErrorCode::WrongOrder, "matrix_to_params needs a 3x3 matrix");
    if (!a(1, 0).is_zero()) throw DomainError(ErrorCode::ZeroCellMissing, "entry (1,0) is " + a(1, 0).str() + ", not 0");
    return {2 * (a(0, 0) - a(1, 1)), 2 * (a(0, 0) + a(1, 1)) - 3, a(0, 1)};
}

/// The root a given w sits on (both coincide when the discriminant is 0).
inline RootSign root_sign_of(const WeakFormCoordinates& c) {
    return 8 * c.w - (1 - 2 * c.v) >= Rational(0) ? RootSign::Plus : RootSign::Minus;
}

/// 4w^2 + (2v-1)w + (3u^2 + 5v^2 - 2v - 3)/8; equals frobenius_sq - trace
/// of the parametrized matrix.
inline Rational weak_residual(const Rational& u, const Rational& v, const Rational& w) {
    return 4 * w * w + (2 * v - 1) * w + (3 * u * u + 5 * v * v - 2 * v - 3) / 8;
}

/// Lexicographically first permutation whose diagonal sum equals
/// frobenius_sq(a) exactly.
inline std::optional<Permutation> weak_saturation_check(const DoublyStochastic& a) {
    const Rational frob = frobenius_sq(a.matrix());
    Permutation p = Permutation::identity(a.order());
    do {
        if (diagonal_sum(a.matrix(), p) == frob) return p;
    } while (p.next());
    return std::nullopt;
}

inline std::optional<Permutation> weak_saturation_check(const FloatMatrix& a, double tol = 1e-12) {
    const double frob = frobenius_sq(a);
    Permutation p = Permutation::identity(a.order());
    do {
        if (std::abs(diagonal_sum(a, p) - frob) < tol) return p;
    } while (p.next());
    return std::nullopt;
}

/// trace(a) >= trace(a P) for every permutation matrix P.
inline bool trace_dominant(const RatMatrix& a) {
    const Rational tr = a.trace();
    const Permutation id = Permutation::identity(a.order());
    Permutation p = id;
    while (p.next())
        if (permute(a, id, p).trace() > tr) return false;
    return true;
}

inline bool trace_dominant(const DoublyStochastic& a) { return trace_dominant(a.matrix()); }

inline bool trace_dominant(const FloatMatrix& a, double tol = 1e-12) {
    const double tr = a.trace();
    const Permutation id = Permutation::identity(a.order());
    Permutation p = id;
    while (p.next())
        if (permute(a, id, p).trace() > tr + tol) return false;
    return true;
}

// Boundary curves of U- and U+.

inline std::optional<double> boundary_f(double u) {
    const double r = (3 + 2 * std::abs(u) - 5 * u * u) / 3;
    if (r < 0) return std::nullopt;
    return -std::sqrt(r);
}

inline std::optional<double> boundary_g(double u) {
    const double r = 16 - 15 * u * u;
    if (r < 0) return std::nullopt;
    return (1 - std::sqrt(r)) / 5;
}

/// Lower boundary of U-: the E0 arc for |u| <= 1/2, f for 1/2 < |u| <= 1.
/// Both branches equal -sqrt(11/12) at |u| = 1/2.
inline std::optional<double> boundary_h(double u) {
    const double a = std::abs(u);
    if (a <= 0.5) return -std::sqrt(7.0 / 6.0 - u * u);
    if (a <= 1.0) return boundary_f(u);
    return std::nullopt;
}

struct BoundarySample {
    double u;
    std::optional<double> f, g, h;
};

inline std::vector<BoundarySample> boundary_curves(double u_min, double u_max, double step) {
    if (!(step > 0)) throw DomainError(ErrorCode::InvalidArgument, "step must be positive");
    if (u_max < u_min) throw DomainError(ErrorCode::InvalidArgument, "max must not be below min");
    std::vector<BoundarySample> out;
    const auto count = static_cast<std::size_t>(std::floor((u_max - u_min) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        const double u = u_min + static_cast<double>(i) * step;
        out.push_back({u, boundary_f(u), boundary_g(u), boundary_h(u)});
    }
    return out;
}

/// CSV with header "u,f,g,h"; undefined values are empty fields.
inline std::string boundary_csv(const std::vector<BoundarySample>& samples) {
    auto fmt = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
        return std::string(buf);
    };
    std::string out = "u,f,g,h\n";
    for (const auto& s : samples) {
        out += fmt(s.u);
        for (const auto& c : {s.f, s.g, s.h}) {
            out += ',';
            if (c) out += fmt(*c);
        }
        out += '\n';
    }
    return out;
}

/// {lo, lo + step, ..., <= hi} as exact rationals.
inline std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    if (step.sign() <= 0) throw DomainError(ErrorCode::InvalidArgument, "grid step must be positive");
    std::vector<Rational> out;
    for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    return out;
}

} // namespace dsm
