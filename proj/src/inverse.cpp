#include "bilap/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bilap/polyroots.hpp"

namespace bilap {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kRootResidualTol = 1e-8;
constexpr size_t kNodeBudget = 1u << 26;

double abs_coeff_bound(const Coeffs& c, double abs_z) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * abs_z + std::abs(c[i]);
    }
    return acc;
}

// f_j(t) = (e^{xt}/2pi) * [ trapezoid of e^{iyt} g(y) over [-Y, Y]
//          + asymptotic tails ], g(y) = Fj(x + i y).  The tails are the
// integration-by-parts boundary terms at +-Y through g'':
//   int_Y^inf  e^{iyt} g dy = e^{iYt} (-g/(it) + g'/(it)^2 - g''/(it)^3) + O(g'''/t^3)
//   int_-inf^-Y e^{iyt} g dy = e^{-iYt} (g/(it) - g'/(it)^2 + g''/(it)^3) + O(g'''/t^3)
// with g', g'' at +-Y taken by central differences on the grid step.
Complex line_integral(const std::function<Complex(Complex)>& fj, double x,
                      double t, double half_height, double step) {
    const auto g = [&](double y) { return fj(Complex(x, y)); };

    const double span = 2.0 * half_height;
    const size_t n = static_cast<size_t>(std::ceil(span / step));
    if (n + 1 > kNodeBudget) {
        throw NumericFailureError("Bromwich node budget exceeded");
    }
    const double h = span / static_cast<double>(n);

    Complex sum = 0.5 * (std::polar(1.0, -half_height * t) * g(-half_height) +
                         std::polar(1.0, half_height * t) * g(half_height));
    for (size_t j = 1; j < n; ++j) {
        const double y = -half_height + static_cast<double>(j) * h;
        sum += std::polar(1.0, y * t) * g(y);
    }
    Complex total = h * sum;

    const Complex it(0.0, t);
    const Complex it2 = it * it;
    const Complex it3 = it2 * it;
    {
        const Complex gy = g(half_height);
        const Complex gp = g(half_height + h);
        const Complex gm = g(half_height - h);
        const Complex d1 = (gp - gm) / (2.0 * h);
        const Complex d2 = (gp - 2.0 * gy + gm) / (h * h);
        total += std::polar(1.0, half_height * t) * (-gy / it + d1 / it2 - d2 / it3);
    }
    {
        const Complex gy = g(-half_height);
        const Complex gp = g(-half_height + h);
        const Complex gm = g(-half_height - h);
        const Complex d1 = (gp - gm) / (2.0 * h);
        const Complex d2 = (gp - 2.0 * gy + gm) / (h * h);
        total += std::polar(1.0, -half_height * t) * (gy / it - d1 / it2 + d2 / it3);
    }

    return std::exp(x * t) / (2.0 * M_PI) * total;
}

double auto_half_height(double t, double refine_tol, double x) {
    const double tt = std::max(t, 1e-3);
    const double budget = std::max(refine_tol, 1e-12) / 8.0;
    const double growth = std::exp(std::min(x * t, 30.0));
    const double y =
        std::cbrt(growth * 8.0 / (2.0 * M_PI * tt * tt * tt * budget));
    return std::clamp(y, 64.0, 5e5);
}

// x = k + delta, shrunk when e^{xt} would outgrow double headroom.
std::pair<double, bool> select_abscissa(double k, double t,
                                        const BromwichConfig& cfg) {
    double x = k + cfg.abscissa_offset;
    bool capped = false;
    if (x * t > cfg.xt_cap) {
        x = std::max(k + 1e-3, cfg.xt_cap / t);
        capped = true;
    }
    return {x, capped};
}

std::function<Complex(Complex)> component_callable(const ImageFunction& image,
                                                   int which) {
    if (const auto* rats = std::get_if<RationalComponents>(&image.rep)) {
        const RationalFunction r = which == 1 ? rats->r1 : rats->r2;
        return [r](Complex s) { return rational_eval(r, s); };
    }
    const auto& fns = std::get<ComponentFunctions>(image.rep);
    return which == 1 ? fns.f1 : fns.f2;
}

double rightmost_pole_real(const RationalComponents& rats) {
    double rightmost = -std::numeric_limits<double>::infinity();
    for (const RationalFunction* r : {&rats.r1, &rats.r2}) {
        for (const Pole& p : find_poles(*r)) {
            rightmost = std::max(rightmost, p.location.real());
        }
    }
    return rightmost;
}

// Effective abscissa base for an image: declared k, and for rationals
// also the rightmost pole (the line must pass right of every pole).
double effective_order(const ImageFunction& image) {
    double k = image.abscissa_k;
    if (image.is_rational()) {
        k = std::max(k, rightmost_pole_real(image.rational()));
    }
    return k;
}

InversionResult recombine(Complex c1, Complex c2, double reality_tol) {
    const Bicomplex v = from_idempotent({c1, c2});
    InversionResult res;
    res.value = v.a0;
    res.reality_defect =
        std::max({std::abs(v.a1), std::abs(v.a2), std::abs(v.a3)});
    res.reality_warning = res.reality_defect > reality_tol;
    return res;
}

InversionResult bromwich_invert_prechecked(const ImageFunction& image, double t,
                                           const BromwichConfig& cfg) {
    const double k = effective_order(image);
    const ComponentInversion c1 =
        bromwich_component(component_callable(image, 1), k, t, cfg);
    const ComponentInversion c2 =
        bromwich_component(component_callable(image, 2), k, t, cfg);
    InversionResult res = recombine(c1.value, c2.value, cfg.reality_tol);
    res.refinements = std::max(c1.refinements, c2.refinements);
    res.abscissa = c1.abscissa;
    res.abscissa_capped = c1.abscissa_capped || c2.abscissa_capped;
    return res;
}

}  // namespace

void validate(const BromwichConfig& cfg) {
    if (!(cfg.abscissa_offset > 0.0))
        throw InvalidArgumentError("abscissa offset delta must be > 0");
    if (!(cfg.refine_tol > 0.0))
        throw InvalidArgumentError("refine_tol must be > 0");
    if (cfg.max_refinements < 1)
        throw InvalidArgumentError("max_refinements must be >= 1");
    if (!(cfg.reality_tol > 0.0))
        throw InvalidArgumentError("reality_tol must be > 0");
    if (!(cfg.xt_cap > 0.0)) throw InvalidArgumentError("xt_cap must be > 0");
    if (!std::isfinite(cfg.half_height) || !std::isfinite(cfg.step))
        throw InvalidArgumentError("half_height and step must be finite");
}

PoleSet find_poles(const RationalFunction& r) {
    const int dn = degree(r.num);
    const int dd = degree(r.den);
    if (dd < 1) throw InvalidArgumentError("denominator must have degree >= 1");
    if (dn >= dd) throw InvalidArgumentError("image must be strictly proper");

    const std::vector<Complex> roots = polynomial_roots(r.den);

    // Greedy clustering into multiple roots.
    struct Cluster {
        Complex sum;
        int count;
    };
    std::vector<Cluster> clusters;
    for (const Complex& root : roots) {
        bool placed = false;
        for (Cluster& c : clusters) {
            const Complex mean = c.sum / static_cast<double>(c.count);
            if (std::abs(root - mean) <= kClusterTol * (1.0 + std::abs(root))) {
                c.sum += root;
                c.count += 1;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({root, 1});
    }

    // An m-fold cluster centroid carries only O(eps^(1/m)) accuracy, so
    // polish it by Newton on den^{(m-1)}, where the root is simple.
    const auto polish = [&](Complex z, int mult) -> Complex {
        Coeffs target = r.den;
        for (int i = 1; i < mult; ++i) target = poly_derivative(target);
        const Coeffs target_prime = poly_derivative(target);
        Complex refined = z;
        for (int iter = 0; iter < 30; ++iter) {
            const Complex fp = horner_eval(target_prime, refined);
            if (fp == Complex(0.0, 0.0)) break;
            const Complex step = horner_eval(target, refined) / fp;
            refined -= step;
            if (std::abs(step) <= 4e-16 * (1.0 + std::abs(refined))) break;
        }
        const bool local = std::abs(refined - z) <= 16.0 * kClusterTol * (1.0 + std::abs(z));
        const bool better = std::abs(horner_eval(r.den, refined)) <=
                            std::abs(horner_eval(r.den, z));
        return (local && better) ? refined : z;
    };
    // Snap sub-rounding-noise components so conjugate pairs sort cleanly.
    const auto snap = [](Complex z) -> Complex {
        const double tol = 8e-16 * (1.0 + std::abs(z));
        return {std::abs(z.real()) <= tol ? 0.0 : z.real(),
                std::abs(z.imag()) <= tol ? 0.0 : z.imag()};
    };

    PoleSet poles;
    poles.reserve(clusters.size());
    for (const Cluster& c : clusters) {
        const Complex centroid = c.sum / static_cast<double>(c.count);
        poles.push_back({snap(polish(centroid, c.count)), c.count});
    }
    std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });

    int mult_sum = 0;
    for (const Pole& p : poles) {
        mult_sum += p.multiplicity;
        const double scale = abs_coeff_bound(r.den, std::abs(p.location));
        if (std::abs(horner_eval(r.den, p.location)) > kRootResidualTol * scale) {
            throw NumericFailureError("pole residual check failed: |den(root)| too large");
        }
    }
    if (mult_sum != dd) {
        throw NumericFailureError("pole multiplicities do not sum to deg(den)");
    }
    return poles;
}

ComponentInversion bromwich_component(const std::function<Complex(Complex)>& fj,
                                      double k, double t,
                                      const BromwichConfig& cfg) {
    validate(cfg);
    if (!fj) throw InvalidArgumentError("image component handle must be callable");
    if (!(t > 0.0)) {
        throw DomainError("inversion requires t > 0 (the arc lemma holds only there)");
    }

    const auto [x, capped] = select_abscissa(k, t, cfg);
    double half_height =
        cfg.half_height > 0.0 ? cfg.half_height : auto_half_height(t, cfg.refine_tol, x);
    double step = cfg.step > 0.0
                      ? cfg.step
                      : std::min(0.35, 2.0 * M_PI * (x - k) / 21.0);
    step = std::min(step, half_height / 32.0);

    Complex previous = line_integral(fj, x, t, half_height, step);
    for (int r = 1; r <= cfg.max_refinements; ++r) {
        half_height *= 2.0;
        step *= 0.5;
        const Complex current = line_integral(fj, x, t, half_height, step);
        if (std::abs(current - previous) < cfg.refine_tol) {
            return {current, r, x, capped};
        }
        if (r == cfg.max_refinements) {
            throw InversionConvergenceError(
                "Bromwich refinement did not stabilize within " +
                    std::to_string(cfg.max_refinements) + " refinements",
                previous, current);
        }
        previous = current;
    }
    return {previous, 0, x, capped};  // unreachable: max_refinements >= 1
}

InversionResult bromwich_invert(const ImageFunction& image, double t,
                                const BromwichConfig& cfg) {
    validate(cfg);
    if (!image.is_rational()) {
        const DecayReport report = decay_check(image, default_probe_radii());
        if (!report.passes) {
            throw InvalidImageError(
                "image failed the decay probe (fitted p = " +
                std::to_string(report.est_p) +
                "); the arc condition |F| < M/|xi|^p does not hold");
        }
    }
    return bromwich_invert_prechecked(image, t, cfg);
}

Complex residue_at(const RationalFunction& r, Complex pole, int multiplicity,
                   double t) {
    if (multiplicity < 1) throw InvalidArgumentError("multiplicity must be >= 1");
    if (!(t > 0.0)) throw DomainError("residues of e^{st}F(s) are summed for t > 0 only");

    // Deflate den = (s - pole)^m q(s); large remainders mean the pole
    // does not actually divide the denominator that many times.
    Coeffs q(r.den);
    for (int i = 0; i < multiplicity; ++i) {
        const double scale = abs_coeff_bound(q, std::abs(pole)) + 1e-300;
        auto [quotient, remainder] = poly_deflate(q, pole);
        if (std::abs(remainder) > 1e-6 * scale) {
            throw InvalidArgumentError(
                "pole does not match the denominator at the stated multiplicity");
        }
        q = std::move(quotient);
    }
    const Complex q0 = horner_eval(q, pole);
    if (std::abs(q0) <= 1e-10 * (abs_coeff_bound(q, std::abs(pole)) + 1e-300)) {
        throw InvalidArgumentError(
            "stated multiplicity is too low: deflated denominator still vanishes at the pole");
    }

    const int m = multiplicity;
    // h = num/q and its derivatives at the pole, from num^{(j)} = sum_i C(j,i) h^{(i)} q^{(j-i)}.
    std::vector<Complex> h(static_cast<size_t>(m));
    std::vector<Complex> num_d(static_cast<size_t>(m));
    std::vector<Complex> q_d(static_cast<size_t>(m));
    {
        Coeffs dn(r.num);
        Coeffs dq(q);
        for (int j = 0; j < m; ++j) {
            num_d[static_cast<size_t>(j)] = horner_eval(dn, pole);
            q_d[static_cast<size_t>(j)] = horner_eval(dq, pole);
            dn = poly_derivative(dn);
            dq = poly_derivative(dq);
        }
    }
    for (int j = 0; j < m; ++j) {
        Complex acc = num_d[static_cast<size_t>(j)];
        double c = 1.0;  // C(j, i), updated incrementally
        for (int i = 0; i < j; ++i) {
            acc -= c * h[static_cast<size_t>(i)] * q_d[static_cast<size_t>(j - i)];
            c = c * static_cast<double>(j - i) / static_cast<double>(i + 1);
        }
        h[static_cast<size_t>(j)] = acc / q0;
    }

    // residue = e^{pole t}/(m-1)! * sum_j C(m-1, j) t^{m-1-j} h^{(j)}
    double factorial = 1.0;
    for (int i = 2; i < m; ++i) factorial *= static_cast<double>(i);
    Complex sum(0.0, 0.0);
    double c = 1.0;  // C(m-1, j)
    double t_pow = std::pow(t, m - 1);
    for (int j = 0; j < m; ++j) {
        sum += c * t_pow * h[static_cast<size_t>(j)];
        c = c * static_cast<double>(m - 1 - j) / static_cast<double>(j + 1);
        t_pow /= t;
    }
    return std::exp(pole * t) * sum / factorial;
}

InversionResult residue_invert(const ImageFunction& image, double t,
                               double reality_tol) {
    if (!image.is_rational()) {
        throw InvalidArgumentError(
            "residue inversion requires the RATIONAL image variant");
    }
    if (!(t > 0.0)) throw DomainError("inversion requires t > 0");

    const auto& rats = image.rational();
    Complex components[2];
    int idx = 0;
    for (const RationalFunction* r : {&rats.r1, &rats.r2}) {
        Complex sum(0.0, 0.0);
        for (const Pole& p : find_poles(*r)) {
            sum += residue_at(*r, p.location, p.multiplicity, t);
        }
        components[idx++] = sum;
    }
    return recombine(components[0], components[1], reality_tol);
}

std::vector<SeriesPoint> invert_grid(const ImageFunction& image,
                                     const std::vector<double>& t_grid,
                                     const BromwichConfig& cfg,
                                     InversionMethod method) {
    validate(cfg);
    if (t_grid.empty()) throw InvalidArgumentError("t grid must be non-empty");
    for (const double t : t_grid) {
        if (!(t > 0.0)) {
            throw DomainError("t grid must contain only t > 0");
        }
    }
    for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
        if (!(t_grid[i] < t_grid[i + 1])) {
            throw InvalidArgumentError("t grid must be strictly increasing");
        }
    }

    InversionMethod chosen = method;
    if (chosen == InversionMethod::Auto) {
        chosen = image.is_rational() ? InversionMethod::Residue
                                     : InversionMethod::Bromwich;
    }
    if (chosen == InversionMethod::Residue && !image.is_rational()) {
        throw InvalidArgumentError(
            "residue method requires the RATIONAL image variant");
    }
    if (chosen == InversionMethod::Bromwich && !image.is_rational()) {
        const DecayReport report = decay_check(image, default_probe_radii());
        if (!report.passes) {
            throw InvalidImageError("image failed the decay probe");
        }
    }

    std::vector<SeriesPoint> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) {
        SeriesPoint point;
        point.t = t;
        try {
            const InversionResult res = chosen == InversionMethod::Residue
                                            ? residue_invert(image, t, cfg.reality_tol)
                                            : bromwich_invert_prechecked(image, t, cfg);
            point.value = res.value;
            point.reality_defect = res.reality_defect;
            point.refinements = res.refinements;
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
