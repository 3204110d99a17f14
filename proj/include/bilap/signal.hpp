#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bilap/rational.hpp"

namespace bilap {

/**
 * A real-valued object function f(t) on t >= 0 with a declared exponential
 * order k: |f(t)| <= M e^{k t}.  The growth constant M is estimated
 * empirically at registration over a probe grid and drives the truncation
 * of the forward transform.
 *
 * The handle must be side-effect-free; it may be evaluated concurrently.
 */
struct SignalSpec {
    std::function<double(double)> eval;
    double order_k = 0.0;
    std::string label;
    double growth_bound = 1.0;  ///< empirical M = max |f(t)| e^{-k t} on the probe grid
    double support_end = 0.0;   ///< f is identically 0 beyond this; 0 = unbounded
};

/// Probes eval on [0, probe_t_max], rejects non-finite samples and records
/// the empirical growth bound.
SignalSpec make_signal(std::function<double(double)> eval, double order_k,
                       std::string label, double probe_t_max = 20.0);

/// Image supplied as two complex component functions (F1, F2).
struct ComponentFunctions {
    std::function<Complex(Complex)> f1;
    std::function<Complex(Complex)> f2;
};

/// Image supplied as a strictly proper rational per component.
struct RationalComponents {
    RationalFunction r1;
    RationalFunction r2;
};

/**
 * An evaluable image F(xi), always represented through its two complex
 * component functions per the idempotent splitting F = F1 e1 + F2 e2.
 * The RATIONAL variant additionally carries the algebraic structure the
 * residue route needs.
 */
struct ImageFunction {
    std::variant<ComponentFunctions, RationalComponents> rep;
    double abscissa_k = 0.0;  ///< both components defined and finite for Re(s) > abscissa_k

    bool is_rational() const {
        return std::holds_alternative<RationalComponents>(rep);
    }
    const RationalComponents& rational() const {
        return std::get<RationalComponents>(rep);
    }

    /// Evaluates component 1 or 2.  Rational components use the guarded
    /// evaluator (near-pole arguments raise PoleProximityError).
    Complex eval_component(int which, Complex s) const;
};

ImageFunction make_component_image(std::function<Complex(Complex)> f1,
                                   std::function<Complex(Complex)> f2,
                                   double abscissa_k);
ImageFunction make_rational_image(RationalFunction r1, RationalFunction r2,
                                  double abscissa_k);

struct DecayReport {
    bool passes = false;
    double est_p = 0.0;  ///< fitted decay exponent: |F| ~ M / R^p on large arcs
    double est_M = 0.0;
};

/// Samples max |F1|, |F2| on left semicircular arcs of the probe radii
/// (centered on the real axis at abscissa_k + 1) and fits log|F| against
/// log R.  Passes iff the fitted slope is <= -0.5 and the largest arc's
/// maximum is <= 1e-3 — the paper's arc condition |F| < M/|xi|^p needs
/// some p > 0, and a conservative floor avoids false passes from noise.
DecayReport decay_check(const ImageFunction& image,
                        const std::vector<double>& probe_radii);

std::vector<double> default_probe_radii();

/// One of the catalog transform pairs with its parameters bound.
struct CatalogEntry {
    std::string id;
    double omega = 0.0;  ///< 0 when the entry takes no omega
    double a = 0.0;      ///< 0 when the entry takes no a
    RationalFunction image;  ///< classical image; applies to both components
    SignalSpec object;
    double order_k = 0.0;
};

/// Catalog ids in stable CLI-facing order:
/// unit_step, sin, cos, damped_cos, damped_sin.
const std::vector<std::string>& catalog_ids();

/// Which named parameters an entry takes ("omega", "a").
std::vector<std::string> catalog_params(const std::string& id);

/**
 * Builds a catalog entry.  Recognized pairs:
 *   unit_step   1/xi                          <-> 1
 *   sin         omega/(xi^2+omega^2)          <-> sin(omega t)
 *   cos         xi/(xi^2+omega^2)             <-> cos(omega t)
 *   damped_cos  (xi+a)/((xi+a)^2+omega^2)     <-> e^{-a t} cos(omega t)
 *   damped_sin  omega/((xi+a)^2+omega^2)      <-> e^{-a t} sin(omega t)
 * order_k is 0 for the undamped pairs and -a for the damped ones.
 * Unknown ids, omega <= 0, or stray parameters are rejected.
 */
CatalogEntry catalog_lookup(const std::string& id,
                            const std::map<std::string, double>& params);

/// The entry's image as a RATIONAL ImageFunction (same rational on both
/// components, abscissa at order_k).
ImageFunction catalog_image(const CatalogEntry& entry);

}  // namespace bilap
