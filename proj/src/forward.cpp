#include "bilap/forward.hpp"

#include <cmath>

#include "bilap/quadrature.hpp"

namespace bilap {

namespace {

constexpr double kRegionMargin = 1e-6;
constexpr double kHorizonCap = 1e6;
constexpr int kPanelCap = 1 << 20;
constexpr int kMaxDoublings = 12;

// Smallest T with M e^{(k - x) T} / (x - k) < tol.
double tail_horizon(double m_bound, double k, double x, double tol) {
    const double rate = x - k;
    const double arg = m_bound / (tol * rate);
    if (arg <= 1.0) return 0.0;
    return std::log(arg) / rate;
}

Complex transform_component(const SignalSpec& f, Complex s,
                            const QuadratureConfig& cfg) {
    const double x = s.real();
    const double k = f.order_k;
    const double m_bound = 2.0 * f.growth_bound;

    double horizon = std::max(cfg.t_max, tail_horizon(m_bound, k, x, cfg.tail_tol));
    if (f.support_end > 0.0) horizon = std::min(horizon, f.support_end);
    if (horizon > kHorizonCap) {
        throw TruncationError(
            "tail bound for signal '" + f.label +
            "' cannot be met within the horizon cap (needs t_max ~ " +
            std::to_string(horizon) + ")");
    }

    const auto integrand = [&](double t) -> Complex {
        return f.eval(t) * std::polar(std::exp(-x * t), -s.imag() * t);
    };

    // Quarter-oscillation cap keeps Gauss-Legendre effective for large |Im s|.
    int panels = cfg.n_panels;
    const double abs_im = std::abs(s.imag());
    if (abs_im > 0.0) {
        const double max_width = M_PI / (4.0 * abs_im);
        const double needed = std::ceil(horizon / max_width);
        if (needed > static_cast<double>(kPanelCap)) {
            throw TruncationError("oscillation-capped panel count exceeds the resource cap");
        }
        panels = std::max(panels, static_cast<int>(needed));
    }

    const GaussRule& rule = gauss_legendre16();
    Complex value = integrate_panels(integrand, 0.0, horizon, panels, rule);
    if (cfg.rule == QuadratureConfig::Rule::FixedComposite) return value;

    for (int i = 0; i < kMaxDoublings; ++i) {
        if (panels > kPanelCap / 2) {
            throw TruncationError("panel refinement exceeded the resource cap");
        }
        panels *= 2;
        const Complex refined = integrate_panels(integrand, 0.0, horizon, panels, rule);
        if (std::abs(refined - value) < cfg.tail_tol) return refined;
        value = refined;
    }
    throw TruncationError("panel refinement did not stabilize within the doubling cap");
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw InvalidArgumentError("t_max must be > 0");
    if (cfg.n_panels < 8) throw InvalidArgumentError("n_panels must be >= 8");
    if (!(cfg.tail_tol > 0.0)) throw InvalidArgumentError("tail_tol must be > 0");
}

bool in_region(const Bicomplex& xi, double k, double margin) {
    const IdempotentPair p = to_idempotent(xi);
    return p.xi1.real() >= k + margin && p.xi2.real() >= k + margin;
}

Bicomplex laplace_point(const SignalSpec& f, const Bicomplex& xi,
                        const QuadratureConfig& cfg) {
    validate(cfg);
    if (!f.eval) throw InvalidArgumentError("signal handle must be callable");
    if (!in_region(xi, f.order_k, kRegionMargin)) {
        throw ConvergenceRegionError(
            "xi lies outside the region of convergence (need Re of both "
            "idempotent components > k = " + std::to_string(f.order_k) + ")");
    }
    const IdempotentPair p = to_idempotent(xi);
    const Complex f1 = transform_component(f, p.xi1, cfg);
    const Complex f2 = transform_component(f, p.xi2, cfg);
    return from_idempotent({f1, f2});
}

std::vector<TransformPoint> laplace_grid(const SignalSpec& f,
                                         const std::vector<Bicomplex>& xis,
                                         const QuadratureConfig& cfg) {
    std::vector<TransformPoint> out;
    out.reserve(xis.size());
    for (const Bicomplex& xi : xis) {
        TransformPoint point;
        point.xi = xi;
        try {
            point.value = laplace_point(f, xi, cfg);
            point.ok = true;
        } catch (const Error& e) {
            point.ok = false;
            point.error = e.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace bilap
