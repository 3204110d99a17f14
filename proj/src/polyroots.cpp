#include "bilap/polyroots.hpp"

#include <cmath>
#include <limits>

namespace bilap {

namespace {

constexpr int kMaxDegree = 64;
constexpr int kMaxIterations = 500;

// |p| evaluated with absolute coefficients; the machine-level floor for
// |p(z)| at a well-conditioned root.
double eval_bound(const Coeffs& c, double abs_z) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * abs_z + std::abs(c[i]);
    }
    return acc;
}

}  // namespace

std::vector<Complex> polynomial_roots(const Coeffs& coeffs) {
    const int deg = degree(coeffs);
    if (deg < 1) {
        throw InvalidArgumentError("root finding needs a polynomial of degree >= 1");
    }
    if (deg > kMaxDegree) {
        throw InvalidArgumentError("polynomial degree exceeds the supported cap of 64");
    }

    // Monic working copy.
    Coeffs p(coeffs.begin(), coeffs.begin() + deg + 1);
    const Complex lead = p.back();
    for (auto& c : p) c /= lead;

    // Deflate exact zero roots so e.g. den(xi) = xi yields the pole 0 exactly.
    std::vector<Complex> roots;
    while (p.size() > 1 && p.front() == Complex(0.0, 0.0)) {
        roots.emplace_back(0.0, 0.0);
        p.erase(p.begin());
    }
    const int n = static_cast<int>(p.size()) - 1;
    if (n == 0) return roots;

    // Initial guesses on a circle sized by the Cauchy bound, angle-offset
    // to dodge symmetry axes.
    double coeff_max = 0.0;
    for (int i = 0; i < n; ++i) coeff_max = std::max(coeff_max, std::abs(p[static_cast<size_t>(i)]));
    const double radius = std::min(1.0 + coeff_max, 1e6);
    std::vector<Complex> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * M_PI * i / n + 0.4;
        z[static_cast<size_t>(i)] = std::polar(radius * (0.5 + 0.5 * (i % 3) / 3.0), angle);
    }

    const Coeffs dp = poly_derivative(p);
    bool converged = false;
    for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            const Complex zi = z[static_cast<size_t>(i)];
            const Complex pv = horner_eval(p, zi);
            if (std::abs(pv) <= 16.0 * std::numeric_limits<double>::epsilon() *
                                    eval_bound(p, std::abs(zi))) {
                continue;  // numerically a root already
            }
            Complex dv = horner_eval(dp, zi);
            if (dv == Complex(0.0, 0.0)) dv = Complex(1e-30, 0.0);
            const Complex newton = pv / dv;
            Complex repulsion(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex diff = zi - z[static_cast<size_t>(j)];
                if (diff == Complex(0.0, 0.0)) continue;
                repulsion += 1.0 / diff;
            }
            const Complex denom = 1.0 - newton * repulsion;
            const Complex step = denom == Complex(0.0, 0.0) ? newton : newton / denom;
            z[static_cast<size_t>(i)] = zi - step;
            if (std::abs(step) > 1e-13 * (1.0 + std::abs(zi))) converged = false;
        }
    }
    if (!converged) {
        // Accept iterates that already sit on numerical roots (multiple
        // roots stagnate at ~eps^(1/m) step sizes while |p| is at the floor).
        for (const Complex& zi : z) {
            const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                                 eval_bound(p, std::abs(zi));
            if (std::abs(horner_eval(p, zi)) > std::max(floor, 1e-12)) {
                throw NumericFailureError(
                    "polynomial root iteration failed to converge within 500 iterations");
            }
        }
    }

    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

}  // namespace bilap
