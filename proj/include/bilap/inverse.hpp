#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bilap/bicomplex.hpp"
#include "bilap/signal.hpp"

namespace bilap {

/**
 * Controls the numerical Bromwich inversion.  The contour is the vertical
 * line x = k + abscissa_offset, truncated symmetrically to y in [-Y, Y]
 * and integrated with the trapezoidal rule of step h; Y is doubled and h
 * halved until successive values differ by less than refine_tol.  The
 * symmetric truncation realizes the principal-value sense of the
 * definition.
 *
 * half_height and step <= 0 select automatic values from t and
 * refine_tol; explicit positive values are honored as the starting level.
 */
struct BromwichConfig {
    double abscissa_offset = 1.0;  ///< delta > 0; the line sits at x = k + delta
    double half_height = 0.0;      ///< Y; <= 0 chooses automatically
    double step = 0.0;             ///< h; <= 0 chooses automatically
    double refine_tol = 1e-6;
    int max_refinements = 6;
    double reality_tol = 1e-6;     ///< non-real recombination defect that triggers a warning
    double xt_cap = 30.0;          ///< shrink delta so x*t stays within double headroom
};

void validate(const BromwichConfig& cfg);

/// A denominator root with its multiplicity.
struct Pole {
    Complex location;
    int multiplicity = 1;
};

/// Poles sorted by (Re, Im); multiplicities sum to deg(den).
using PoleSet = std::vector<Pole>;

/// All poles of a strictly proper rational function: roots of the
/// denominator clustered into multiple roots (tolerance 1e-7 scaled by
/// 1 + |root|), each verified by a residual check on the denominator.
PoleSet find_poles(const RationalFunction& r);

struct ComponentInversion {
    Complex value;
    int refinements = 0;
    double abscissa = 0.0;        ///< the x actually used
    bool abscissa_capped = false; ///< x*t cap forced delta below its configured value
};

/**
 * One component of the inversion:
 *   f_j(t) = (1/2 pi) * integral_{-Y}^{Y} e^{(x+iy)t} Fj(x+iy) dy
 * by trapezoid with the analytic tail of the truncated line integral
 * restored from integration-by-parts boundary terms at +-Y (valid under
 * the arc-decay condition |F| < M/|s|^p).  Requires t > 0: the arc lemma
 * holds only there.  Throws InversionConvergenceError with the last two
 * iterates when the refinement loop fails to stabilize.
 */
ComponentInversion bromwich_component(const std::function<Complex(Complex)>& fj,
                                      double k, double t,
                                      const BromwichConfig& cfg = {});

struct InversionResult {
    double value = 0.0;           ///< a0 of the recombined bicomplex value
    double reality_defect = 0.0;  ///< max |a1|, |a2|, |a3| of the recombination
    int refinements = 0;          ///< 0 for the residue route
    bool reality_warning = false; ///< defect exceeded reality_tol
    double abscissa = 0.0;
    bool abscissa_capped = false;
};

/**
 * Full bicomplex Bromwich inversion: inverts both components along the
 * line x = max(k, rightmost pole) + delta, recombines c1 e1 + c2 e2 and
 * returns the real coefficient.  A recombination whose i1/i2/i1i2 content
 * exceeds reality_tol carries a non-real-object warning rather than
 * failing: the construction stays total on unequal components.
 *
 * COMPONENTS-variant images must pass the decay probe first
 * (InvalidImageError otherwise).
 */
InversionResult bromwich_invert(const ImageFunction& image, double t,
                                const BromwichConfig& cfg = {});

/**
 * Residue at one pole of e^{s t} * r(s).  Simple poles use
 * e^{pole t} num(pole) / den'(pole); multiplicity m deflates
 * den = (s - pole)^m q(s) and evaluates the (m-1)-th derivative of
 * e^{s t} num(s)/q(s) by Leibniz expansion — a deliberate extension of
 * the construction, which presumes simple poles.
 */
Complex residue_at(const RationalFunction& r, Complex pole, int multiplicity,
                   double t);

/// Exact inversion of a RATIONAL image: per component the sum of residues
/// of e^{s t} r_j(s) (the 1/(2 pi i1) prefactor cancels the residue
/// theorem's 2 pi i1), recombined like bromwich_invert.
InversionResult residue_invert(const ImageFunction& image, double t,
                               double reality_tol = 1e-6);

enum class InversionMethod { Bromwich, Residue, Auto };

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
    double reality_defect = 0.0;
    int refinements = 0;
    bool ok = false;
    std::string error;
};

/// Per-point inversion over a strictly increasing grid of t > 0 with
/// per-point diagnostics; numeric failures are collected, not fatal.
/// Auto picks the residue route for RATIONAL images, Bromwich otherwise.
std::vector<SeriesPoint> invert_grid(const ImageFunction& image,
                                     const std::vector<double>& t_grid,
                                     const BromwichConfig& cfg = {},
                                     InversionMethod method = InversionMethod::Auto);

}  // namespace bilap
