#include "bilap/signal.hpp"

#include <algorithm>
#include <cmath>

namespace bilap {

SignalSpec make_signal(std::function<double(double)> eval, double order_k,
                       std::string label, double probe_t_max) {
    if (!eval) throw InvalidArgumentError("signal handle must be callable");
    if (!std::isfinite(order_k)) {
        throw InvalidArgumentError("exponential order k must be finite");
    }
    if (!(probe_t_max > 0.0)) {
        throw InvalidArgumentError("probe horizon must be positive");
    }
    SignalSpec spec;
    spec.order_k = order_k;
    spec.label = std::move(label);

    // Empirical check of |f(t)| <= M e^{k t}: every sample must be finite,
    // and the tightest M on the grid is recorded for truncation control.
    constexpr int kProbePoints = 2001;
    double m = 0.0;
    for (int i = 0; i < kProbePoints; ++i) {
        const double t = probe_t_max * i / (kProbePoints - 1);
        const double v = eval(t);
        if (!std::isfinite(v)) {
            throw InvalidArgumentError("signal '" + spec.label +
                                       "' is non-finite at t = " + std::to_string(t));
        }
        m = std::max(m, std::abs(v) * std::exp(-order_k * t));
    }
    spec.growth_bound = std::max(m, 1e-30);
    spec.eval = std::move(eval);
    return spec;
}

Complex ImageFunction::eval_component(int which, Complex s) const {
    if (which != 1 && which != 2) {
        throw InvalidArgumentError("image component index must be 1 or 2");
    }
    if (const auto* fns = std::get_if<ComponentFunctions>(&rep)) {
        return which == 1 ? fns->f1(s) : fns->f2(s);
    }
    const auto& rats = std::get<RationalComponents>(rep);
    return rational_eval(which == 1 ? rats.r1 : rats.r2, s);
}

ImageFunction make_component_image(std::function<Complex(Complex)> f1,
                                   std::function<Complex(Complex)> f2,
                                   double abscissa_k) {
    if (!f1 || !f2) throw InvalidArgumentError("image component handles must be callable");
    ImageFunction img;
    img.rep = ComponentFunctions{std::move(f1), std::move(f2)};
    img.abscissa_k = abscissa_k;
    return img;
}

ImageFunction make_rational_image(RationalFunction r1, RationalFunction r2,
                                  double abscissa_k) {
    ImageFunction img;
    img.rep = RationalComponents{std::move(r1), std::move(r2)};
    img.abscissa_k = abscissa_k;
    return img;
}

// Large enough that a p = 1 image (like 1/xi) drops below the decay gate
// on the outermost arc; all catalog poles sit well inside the innermost.
std::vector<double> default_probe_radii() {
    return {100.0, 200.0, 400.0, 800.0, 1600.0};
}

DecayReport decay_check(const ImageFunction& image,
                        const std::vector<double>& probe_radii) {
    if (probe_radii.size() < 3) {
        throw InvalidArgumentError("decay check needs at least 3 probe radii");
    }
    for (size_t i = 0; i + 1 < probe_radii.size(); ++i) {
        if (!(probe_radii[i] < probe_radii[i + 1])) {
            throw InvalidArgumentError("decay probe radii must be strictly increasing");
        }
    }
    if (!(probe_radii.front() > 0.0)) {
        throw InvalidArgumentError("decay probe radii must be positive");
    }

    const double center = image.abscissa_k + 1.0;
    constexpr int kArcSamples = 64;
    constexpr double kPMin = 0.5;
    constexpr double kDecayTol = 1e-3;

    // Unguarded evaluation: a pole sitting on an arc must show up as a
    // huge or non-finite sample, not as a PoleProximityError.
    const auto sample = [&](int which, Complex s) -> Complex {
        if (const auto* rats = std::get_if<RationalComponents>(&image.rep)) {
            return rational_eval_unguarded(which == 1 ? rats->r1 : rats->r2, s);
        }
        const auto& fns = std::get<ComponentFunctions>(image.rep);
        return which == 1 ? fns.f1(s) : fns.f2(s);
    };

    std::vector<double> log_r;
    std::vector<double> log_mag;
    double last_max = 0.0;
    for (const double radius : probe_radii) {
        double arc_max = 0.0;
        for (int j = 0; j < kArcSamples; ++j) {
            const double theta =
                M_PI / 2.0 + M_PI * (j + 0.5) / kArcSamples;  // left semicircle
            const Complex s = center + std::polar(radius, theta);
            for (int which = 1; which <= 2; ++which) {
                const double mag = std::abs(sample(which, s));
                if (!std::isfinite(mag)) {
                    throw InvalidImageError(
                        "image is non-finite on the decay probe arc of radius " +
                        std::to_string(radius));
                }
                arc_max = std::max(arc_max, mag);
            }
        }
        log_r.push_back(std::log(radius));
        log_mag.push_back(std::log(std::max(arc_max, 1e-300)));
        last_max = arc_max;
    }

    // Least-squares line through (log R, log max|F|).
    const size_t n = log_r.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += log_r[i];
        sy += log_mag[i];
        sxx += log_r[i] * log_r[i];
        sxy += log_r[i] * log_mag[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    DecayReport report;
    report.est_p = -slope;
    report.est_M = std::exp(intercept);
    report.passes = (slope <= -kPMin) && (last_max <= kDecayTol);
    return report;
}

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {"unit_step", "sin", "cos",
                                                 "damped_cos", "damped_sin"};
    return ids;
}

std::vector<std::string> catalog_params(const std::string& id) {
    if (id == "unit_step") return {};
    if (id == "sin" || id == "cos") return {"omega"};
    if (id == "damped_cos" || id == "damped_sin") return {"omega", "a"};
    throw InvalidArgumentError("unknown catalog id '" + id + "'");
}

CatalogEntry catalog_lookup(const std::string& id,
                            const std::map<std::string, double>& params) {
    const std::vector<std::string> expected = catalog_params(id);
    for (const auto& [name, value] : params) {
        if (std::find(expected.begin(), expected.end(), name) == expected.end()) {
            throw InvalidArgumentError("catalog entry '" + id +
                                       "' takes no parameter '" + name + "'");
        }
        if (!std::isfinite(value)) {
            throw InvalidArgumentError("catalog parameter '" + name + "' must be finite");
        }
    }
    const auto param = [&](const std::string& name, double fallback) {
        const auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    };

    CatalogEntry entry;
    entry.id = id;
    if (id == "unit_step") {
        entry.image = make_rational({{1.0}}, {{0.0}, {1.0}});
        entry.order_k = 0.0;
        entry.object = make_signal([](double) { return 1.0; }, 0.0, "unit_step");
        return entry;
    }

    const double omega = param("omega", 1.0);
    if (!(omega > 0.0)) throw InvalidArgumentError("omega must be > 0");
    entry.omega = omega;

    if (id == "sin") {
        entry.image = make_rational({{omega}}, {{omega * omega}, {0.0}, {1.0}});
        entry.order_k = 0.0;
        entry.object = make_signal(
            [omega](double t) { return std::sin(omega * t); }, 0.0, "sin");
        return entry;
    }
    if (id == "cos") {
        entry.image = make_rational({{0.0}, {1.0}}, {{omega * omega}, {0.0}, {1.0}});
        entry.order_k = 0.0;
        entry.object = make_signal(
            [omega](double t) { return std::cos(omega * t); }, 0.0, "cos");
        return entry;
    }

    const double a = param("a", 0.5);
    entry.a = a;
    // (xi+a)^2 + omega^2 = (a^2+omega^2) + 2a xi + xi^2
    const Coeffs shifted_den = {{a * a + omega * omega}, {2.0 * a}, {1.0}};
    if (id == "damped_cos") {
        entry.image = make_rational({{a}, {1.0}}, shifted_den);
        entry.order_k = -a;
        entry.object = make_signal(
            [omega, a](double t) { return std::exp(-a * t) * std::cos(omega * t); },
            -a, "damped_cos");
        return entry;
    }
    if (id == "damped_sin") {
        entry.image = make_rational({{omega}}, shifted_den);
        entry.order_k = -a;
        entry.object = make_signal(
            [omega, a](double t) { return std::exp(-a * t) * std::sin(omega * t); },
            -a, "damped_sin");
        return entry;
    }
    throw InvalidArgumentError("unknown catalog id '" + id + "'");
}

ImageFunction catalog_image(const CatalogEntry& entry) {
    return make_rational_image(entry.image, entry.image, entry.order_k);
}

}  // namespace bilap
