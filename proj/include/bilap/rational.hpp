#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "bilap/errors.hpp"

namespace bilap {

using Complex = std::complex<double>;

/// Polynomial coefficients in ascending degree order: c[0] + c[1] s + ...
using Coeffs = std::vector<Complex>;

/**
 * A strictly proper rational function num(s)/den(s) with complex
 * coefficients.  Strict properness (deg num < deg den) is enforced at
 * construction: it is what makes the image vanish as Re(s) -> infinity and
 * the large-arc bound |F| < M/|s|^p hold, so the residue route is valid.
 */
struct RationalFunction {
    Coeffs num;
    Coeffs den;
};

/// Degree after ignoring exactly-zero leading coefficients; -1 for the
/// zero polynomial.
int degree(const Coeffs& c);

/// Horner evaluation.
Complex horner_eval(const Coeffs& c, Complex s);

/// Coefficients of the derivative polynomial.
Coeffs poly_derivative(const Coeffs& c);

Coeffs poly_add(const Coeffs& a, const Coeffs& b);
Coeffs poly_scale(const Coeffs& a, Complex factor);
Coeffs poly_mul(const Coeffs& a, const Coeffs& b);

/// Synthetic division by (s - root): returns {quotient, remainder}.
std::pair<Coeffs, Complex> poly_deflate(const Coeffs& c, Complex root);

/// Validates and normalizes: trims exactly-zero leading coefficients,
/// requires a nonzero denominator leading coefficient and deg num < deg den.
RationalFunction make_rational(Coeffs num, Coeffs den);

/// num(s)/den(s) by Horner.  Refuses evaluation within the scale-aware
/// pole guard |den(s)| <= 1e-10 * (1 + |s|^deg).
Complex rational_eval(const RationalFunction& r, Complex s);

/// Evaluation without the pole guard; used by decay probing, where a
/// near-pole sample should surface as a huge or non-finite magnitude
/// rather than as an error.
Complex rational_eval_unguarded(const RationalFunction& r, Complex s);

}  // namespace bilap
