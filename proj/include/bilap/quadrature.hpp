#pragma once

#include <vector>

namespace bilap {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes an n-point rule by Newton iteration on the Legendre polynomial.
GaussRule compute_gauss_legendre(int n);

/// The 16-point rule used by the composite panels (cached).
const GaussRule& gauss_legendre16();

/// Composite integration of f over [a, b] split into n_panels equal panels.
/// F may return double or std::complex<double>.
template <typename F>
auto integrate_panels(F&& f, double a, double b, int n_panels,
                      const GaussRule& rule) -> decltype(f(a)) {
    using Value = decltype(f(a));
    const double width = (b - a) / n_panels;
    Value total{};
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        Value panel{};
        for (size_t k = 0; k < rule.nodes.size(); ++k) {
            panel += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
        }
        total += 0.5 * width * panel;
    }
    return total;
}

}  // namespace bilap
