#pragma once

#include <string>
#include <vector>

#include "bilap/bicomplex.hpp"
#include "bilap/signal.hpp"

namespace bilap {

/// Controls the truncated quadrature of F(xi) = integral_0^inf f(t) e^{-xi t} dt.
struct QuadratureConfig {
    enum class Rule { AdaptiveSubdivision, FixedComposite };

    double t_max = 10.0;     ///< starting horizon; auto-extended by the tail bound
    int n_panels = 16;       ///< base composite panel count, >= 8
    double tail_tol = 1e-10; ///< tail bound target and refinement tolerance
    Rule rule = Rule::AdaptiveSubdivision;
};

void validate(const QuadratureConfig& cfg);

/// True iff xi lies in the region of convergence D for order k:
/// both idempotent components have real part above k.  The paper's D is
/// open; a small margin keeps boundary points out rather than guessing
/// their behavior.
bool in_region(const Bicomplex& xi, double k, double margin = 1e-6);

/**
 * Evaluates the bicomplex Laplace transform at one point: F1(xi1) and
 * F2(xi2) by composite 16-point Gauss-Legendre panels on [0, t_max], with
 * t_max extended until M e^{(k - Re s) t_max} / (Re s - k) < tail_tol and
 * panel widths capped at pi / (4 |Im s|) so no panel sees more than a
 * quarter oscillation.  The components are recombined as F1 e1 + F2 e2;
 * when xi1 = xi2 this degenerates to the classical complex transform.
 *
 * Throws ConvergenceRegionError outside D and TruncationError when the
 * tail bound or panel refinement cannot be satisfied within the resource
 * cap.
 */
Bicomplex laplace_point(const SignalSpec& f, const Bicomplex& xi,
                        const QuadratureConfig& cfg = {});

struct TransformPoint {
    Bicomplex xi;
    Bicomplex value;  ///< valid only when ok
    bool ok = false;
    std::string error;
};

/// Elementwise laplace_point with per-point status collection: an
/// out-of-region or non-convergent point never aborts the grid.
std::vector<TransformPoint> laplace_grid(const SignalSpec& f,
                                         const std::vector<Bicomplex>& xis,
                                         const QuadratureConfig& cfg = {});

}  // namespace bilap
