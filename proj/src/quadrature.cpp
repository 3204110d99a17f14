#include "bilap/quadrature.hpp"

#include <cmath>

#include "bilap/errors.hpp"

namespace bilap {

// Newton iteration on P_n, exploiting root symmetry about 0.
GaussRule compute_gauss_legendre(int n) {
    if (n < 1) throw InvalidArgumentError("Gauss-Legendre order must be >= 1");
    GaussRule rule;
    rule.nodes.assign(static_cast<size_t>(n), 0.0);
    rule.weights.assign(static_cast<size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = -z;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

const GaussRule& gauss_legendre16() {
    static const GaussRule rule = compute_gauss_legendre(16);
    return rule;
}

}  // namespace bilap
