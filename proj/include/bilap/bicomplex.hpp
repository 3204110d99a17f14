#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

#include "bilap/errors.hpp"

namespace bilap {

using Complex = std::complex<double>;

/**
 * A bicomplex number a0 + i1*a1 + i2*a2 + i1*i2*a3 with two commuting
 * imaginary units: i1^2 = i2^2 = -1 and (i1*i2)^2 = +1.
 *
 * The real-coefficient view (a0..a3) is the stored representation; the
 * complex views z1 + i2*z2 (z1 = a0 + i1*a1, z2 = a2 + i1*a3) and
 * xi1*e1 + xi2*e2 are derived on demand.  The ring is commutative but has
 * zero divisors: the complex multiples of the idempotents e1, e2 (set O2).
 *
 * Values are immutable in spirit: every operation is a pure function
 * returning a new value, safe for unrestricted concurrent use.
 */
struct Bicomplex {
    double a0 = 0.0;  ///< coefficient of 1
    double a1 = 0.0;  ///< coefficient of i1
    double a2 = 0.0;  ///< coefficient of i2
    double a3 = 0.0;  ///< coefficient of i1*i2

    constexpr Bicomplex() = default;
    constexpr Bicomplex(double c0, double c1, double c2, double c3)
        : a0(c0), a1(c1), a2(c2), a3(c3) {}
    explicit constexpr Bicomplex(double real) : a0(real) {}

    Complex z1() const { return {a0, a1}; }
    Complex z2() const { return {a2, a3}; }

    static Bicomplex from_z(const Complex& z1, const Complex& z2) {
        return {z1.real(), z1.imag(), z2.real(), z2.imag()};
    }

    static constexpr Bicomplex zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr Bicomplex one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Bicomplex unit_i1() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Bicomplex unit_i2() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Bicomplex unit_i1i2() { return {0.0, 0.0, 0.0, 1.0}; }
    /// e1 = (1 + i1*i2)/2, e2 = (1 - i1*i2)/2: the orthogonal idempotents.
    static constexpr Bicomplex e1() { return {0.5, 0.0, 0.0, 0.5}; }
    static constexpr Bicomplex e2() { return {0.5, 0.0, 0.0, -0.5}; }

    Bicomplex& operator+=(const Bicomplex& o) {
        a0 += o.a0; a1 += o.a1; a2 += o.a2; a3 += o.a3;
        return *this;
    }
    Bicomplex& operator-=(const Bicomplex& o) {
        a0 -= o.a0; a1 -= o.a1; a2 -= o.a2; a3 -= o.a3;
        return *this;
    }
    Bicomplex& operator*=(double s) {
        a0 *= s; a1 *= s; a2 *= s; a3 *= s;
        return *this;
    }
};

/// The two complex projections of a bicomplex number onto the auxiliary
/// spaces along e1 and e2: xi1 = z1 - i1*z2, xi2 = z1 + i1*z2.
struct IdempotentPair {
    Complex xi1;
    Complex xi2;
};

inline Bicomplex operator+(Bicomplex x, const Bicomplex& y) { return x += y; }
inline Bicomplex operator-(Bicomplex x, const Bicomplex& y) { return x -= y; }
inline Bicomplex operator-(const Bicomplex& x) {
    return {-x.a0, -x.a1, -x.a2, -x.a3};
}
inline Bicomplex operator*(Bicomplex x, double s) { return x *= s; }
inline Bicomplex operator*(double s, Bicomplex x) { return x *= s; }

/// Ring product.  In the z-view: (z1 + i2 z2)(w1 + i2 w2)
///   = (z1 w1 - z2 w2) + i2 (z1 w2 + z2 w1).
inline Bicomplex operator*(const Bicomplex& x, const Bicomplex& y) {
    const Complex p = x.z1() * y.z1() - x.z2() * y.z2();
    const Complex q = x.z1() * y.z2() + x.z2() * y.z1();
    return Bicomplex::from_z(p, q);
}

/// Validating constructor: rejects non-finite coefficients.
inline Bicomplex from_components(double a0, double a1, double a2, double a3) {
    if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(a2) ||
        !std::isfinite(a3)) {
        throw InvalidArgumentError("bicomplex coefficients must be finite");
    }
    return {a0, a1, a2, a3};
}

/// Euclidean norm sqrt(a0^2 + a1^2 + a2^2 + a3^2) = sqrt(|z1|^2 + |z2|^2).
inline double norm(const Bicomplex& x) {
    return std::sqrt(x.a0 * x.a0 + x.a1 * x.a1 + x.a2 * x.a2 + x.a3 * x.a3);
}

/// Projections P1, P2: xi1 = z1 - i1*z2, xi2 = z1 + i1*z2.
inline IdempotentPair to_idempotent(const Bicomplex& x) {
    const Complex i(0.0, 1.0);
    return {x.z1() - i * x.z2(), x.z1() + i * x.z2()};
}

/// Inverse of the idempotent representation:
/// z1 = (xi1 + xi2)/2, z2 = i1*(xi1 - xi2)/2.
inline Bicomplex from_idempotent(const IdempotentPair& p) {
    const Complex i(0.0, 1.0);
    const Complex z1 = 0.5 * (p.xi1 + p.xi2);
    const Complex z2 = 0.5 * i * (p.xi1 - p.xi2);
    return Bicomplex::from_z(z1, z2);
}

/// Membership test for the singular set O2: |z1^2 + z2^2| = 0 in exact
/// arithmetic; here |z1^2 + z2^2| <= eps * (1 + norm^2), which keeps the
/// test scale-invariant.  Since z1^2 + z2^2 = xi1 * xi2, this is
/// equivalent to one idempotent component vanishing.
inline bool is_singular(const Bicomplex& x, double eps = 1e-12) {
    const Complex s = x.z1() * x.z1() + x.z2() * x.z2();
    const double n = norm(x);
    return std::abs(s) <= eps * (1.0 + n * n);
}

/// Multiplicative inverse via componentwise reciprocal in idempotent
/// coordinates.  Throws SingularElementError for elements of O2.
inline Bicomplex inverse(const Bicomplex& x) {
    if (is_singular(x)) {
        throw SingularElementError(
            "bicomplex element is singular (member of O2, a complex multiple "
            "of e1 or e2); no inverse exists");
    }
    const IdempotentPair p = to_idempotent(x);
    return from_idempotent({1.0 / p.xi1, 1.0 / p.xi2});
}

/// Coefficientwise comparison with a scale-aware tolerance.  No exact
/// equality is exposed: this is a floating-point ring.
inline bool approx_eq(const Bicomplex& x, const Bicomplex& y, double tol) {
    const double scale = 1.0 + std::max(norm(x), norm(y));
    return std::abs(x.a0 - y.a0) <= tol * scale &&
           std::abs(x.a1 - y.a1) <= tol * scale &&
           std::abs(x.a2 - y.a2) <= tol * scale &&
           std::abs(x.a3 - y.a3) <= tol * scale;
}

inline std::ostream& operator<<(std::ostream& os, const Bicomplex& x) {
    return os << '(' << x.a0 << " + " << x.a1 << " i1 + " << x.a2 << " i2 + "
              << x.a3 << " i1i2)";
}

}  // namespace bilap
