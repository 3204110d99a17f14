#pragma once

#include "bilap/rational.hpp"

namespace bilap {

/**
 * All complex roots of the polynomial (ascending coefficients), with
 * multiple roots returned as repeated entries.  Aberth-Ehrlich
 * simultaneous iteration with a 500-iteration cap; exact zero roots are
 * deflated first so images like 1/xi keep their pole at exactly 0.
 *
 * Degree must be between 1 and 64.  Throws NumericFailureError when the
 * iteration does not converge.
 */
std::vector<Complex> polynomial_roots(const Coeffs& coeffs);

}  // namespace bilap
