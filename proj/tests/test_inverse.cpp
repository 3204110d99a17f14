#include <doctest.h>

#include <cmath>
#include <random>

#include "bilap/inverse.hpp"

using bilap::Bicomplex;
using bilap::Complex;
using bilap::ImageFunction;
using bilap::InversionMethod;
using bilap::RationalFunction;

namespace {

ImageFunction catalog_image_for(const std::string& id, double omega = 1.0,
                                double a = 0.5) {
    std::map<std::string, double> params;
    for (const auto& name : bilap::catalog_params(id)) {
        params[name] = name == "omega" ? omega : a;
    }
    return bilap::catalog_image(bilap::catalog_lookup(id, params));
}

double closed_form(const std::string& id, double omega, double a, double t) {
    if (id == "unit_step") return 1.0;
    if (id == "sin") return std::sin(omega * t);
    if (id == "cos") return std::cos(omega * t);
    if (id == "damped_cos") return std::exp(-a * t) * std::cos(omega * t);
    return std::exp(-a * t) * std::sin(omega * t);
}

}  // namespace

TEST_CASE("find_poles: examples") {
    const RationalFunction inv_xi = bilap::make_rational({{1.0}}, {{0.0}, {1.0}});
    const auto p1 = bilap::find_poles(inv_xi);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].location == Complex(0.0, 0.0));
    CHECK(p1[0].multiplicity == 1);

    // den = xi^2 + 9
    const RationalFunction sin3 = bilap::make_rational({{3.0}}, {{9.0}, {0.0}, {1.0}});
    const auto p2 = bilap::find_poles(sin3);
    REQUIRE(p2.size() == 2);
    CHECK(std::abs(p2[0].location - Complex(0.0, -3.0)) <= 1e-12);
    CHECK(std::abs(p2[1].location - Complex(0.0, 3.0)) <= 1e-12);

    // den = (xi+1)^2: one pole of multiplicity 2
    const RationalFunction dbl = bilap::make_rational({{1.0}}, {{1.0}, {2.0}, {1.0}});
    const auto p3 = bilap::find_poles(dbl);
    REQUIRE(p3.size() == 1);
    CHECK(std::abs(p3[0].location - Complex(-1.0, 0.0)) <= 1e-9);
    CHECK(p3[0].multiplicity == 2);
}

TEST_CASE("pole multiplicities always sum to deg(den)") {
    std::mt19937 rng(246);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        bilap::Coeffs den = {{1.0, 0.0}};
        for (int i = 0; i < n; ++i) {
            const Complex root(dist(rng), dist(rng));
            den = bilap::poly_mul(den, {{-root.real(), -root.imag()}, {1.0, 0.0}});
        }
        const RationalFunction r = bilap::make_rational({{1.0}}, den);
        int total = 0;
        for (const auto& p : bilap::find_poles(r)) total += p.multiplicity;
        CHECK(total == n);
    }
}

TEST_CASE("residue_at: examples") {
    // 1/xi at pole 0: residue of e^{st}/s is 1
    const RationalFunction inv_xi = bilap::make_rational({{1.0}}, {{0.0}, {1.0}});
    CHECK(bilap::residue_at(inv_xi, {0.0, 0.0}, 1, 2.5) == Complex(1.0, 0.0));

    // omega/(xi^2+omega^2), omega = 1, pole i: e^{it}/(2i)
    const RationalFunction sin1 = bilap::make_rational({{1.0}}, {{1.0}, {0.0}, {1.0}});
    for (const double t : {0.3, 1.0, 4.0}) {
        const Complex want = std::exp(Complex(0.0, t)) / Complex(0.0, 2.0);
        CHECK(std::abs(bilap::residue_at(sin1, {0.0, 1.0}, 1, t) - want) <= 1e-14);
    }

    // 1/(xi+1)^2, double pole -1: t e^{-t}
    const RationalFunction dbl = bilap::make_rational({{1.0}}, {{1.0}, {2.0}, {1.0}});
    for (const double t : {0.3, 1.0, 4.0}) {
        CHECK(std::abs(bilap::residue_at(dbl, {-1.0, 0.0}, 2, t) -
                       Complex(t * std::exp(-t), 0.0)) <= 1e-12);
    }

    // a wrong pole is rejected
    CHECK_THROWS_AS(bilap::residue_at(inv_xi, {1.0, 0.0}, 1, 1.0),
                    bilap::InvalidArgumentError);
    // understated multiplicity is rejected
    CHECK_THROWS_AS(bilap::residue_at(dbl, {-1.0, 0.0}, 1, 1.0),
                    bilap::InvalidArgumentError);
    // t <= 0 is outside the arc lemma's domain
    CHECK_THROWS_AS(bilap::residue_at(inv_xi, {0.0, 0.0}, 1, 0.0), bilap::DomainError);
}

TEST_CASE("residue_invert: examples") {
    const ImageFunction step = catalog_image_for("unit_step");
    for (const double t : {0.5, 1.0, 2.0, 5.0}) {
        const auto res = bilap::residue_invert(step, t);
        CHECK(std::abs(res.value - 1.0) <= 1e-12);
        CHECK(res.reality_defect <= 1e-12);
        CHECK_FALSE(res.reality_warning);
    }

    // damped_sin omega=2, a=0.5 at t=1: e^{-1/2} sin 2 = 0.5515167...
    const auto ds = bilap::residue_invert(catalog_image_for("damped_sin", 2.0, 0.5), 1.0);
    CHECK(std::abs(ds.value - std::exp(-0.5) * std::sin(2.0)) <= 1e-12);
    CHECK(std::abs(ds.value - 0.5515167681675808) <= 1e-12);

    // cos omega=1 near t -> 0+: residue sum stays stable
    const auto c = bilap::residue_invert(catalog_image_for("cos", 1.0), 0.001);
    CHECK(std::abs(c.value - std::cos(0.001)) <= 1e-6);

    CHECK_THROWS_AS(bilap::residue_invert(catalog_image_for("sin"), 0.0),
                    bilap::DomainError);
}

TEST_CASE("bromwich_component: examples") {
    // F = 1/s, k = 0, t = 1 -> 1
    const auto inv_s = [](Complex s) { return 1.0 / s; };
    const auto r1 = bilap::bromwich_component(inv_s, 0.0, 1.0);
    CHECK(std::abs(r1.value - Complex(1.0, 0.0)) <= 1e-4);
    CHECK(r1.refinements >= 1);

    // F = 1/(s^2+1), k = 0, t = pi/2 -> sin(pi/2) = 1
    const auto lorentz = [](Complex s) { return 1.0 / (s * s + 1.0); };
    const auto r2 = bilap::bromwich_component(lorentz, 0.0, M_PI / 2.0);
    CHECK(std::abs(r2.value - Complex(1.0, 0.0)) <= 1e-4);

    CHECK_THROWS_AS(bilap::bromwich_component(inv_s, 0.0, 0.0), bilap::DomainError);
    CHECK_THROWS_AS(bilap::bromwich_component(inv_s, 0.0, -1.0), bilap::DomainError);
}

TEST_CASE("bromwich_component reports non-convergence with both iterates") {
    bilap::BromwichConfig cfg;
    cfg.refine_tol = 1e-12;       // unreachable with one refinement
    cfg.max_refinements = 1;
    cfg.half_height = 32.0;       // deliberately coarse start
    cfg.step = 0.5;
    const auto inv_s = [](Complex s) { return 1.0 / s; };
    try {
        bilap::bromwich_component(inv_s, 0.0, 0.4, cfg);
        FAIL("expected InversionConvergenceError");
    } catch (const bilap::InversionConvergenceError& e) {
        CHECK(std::abs(e.previous_iterate() - e.last_iterate()) > 1e-12);
    }
}

TEST_CASE("bromwich_invert: unit step and sin anchor values") {
    const auto res = bilap::bromwich_invert(catalog_image_for("unit_step"), 2.0);
    CHECK(std::abs(res.value - 1.0) <= 1e-4);
    CHECK(res.reality_defect <= 1e-6);

    // F1 = F2 = 2/(s^2+4) (omega = 2) at t = pi/4: sin(pi/2) = 1
    const auto sin2 = bilap::bromwich_invert(catalog_image_for("sin", 2.0), M_PI / 4.0);
    CHECK(std::abs(sin2.value - 1.0) <= 1e-4);
}

TEST_CASE("bromwich_invert flags non-real recombinations") {
    // F1 = 1/s, F2 = 2/s invert componentwise to (1, 2): the recombination
    // has a hyperbolic defect |(1-2)/2| = 0.5 and a0 = 1.5
    const RationalFunction one_over_s = bilap::make_rational({{1.0}}, {{0.0}, {1.0}});
    const RationalFunction two_over_s = bilap::make_rational({{2.0}}, {{0.0}, {1.0}});
    const ImageFunction image = bilap::make_rational_image(one_over_s, two_over_s, 0.0);

    const Bicomplex expected = bilap::from_idempotent({{1.0, 0.0}, {2.0, 0.0}});
    CHECK(expected.a0 == 1.5);
    CHECK(std::abs(expected.a3) == 0.5);

    const auto res = bilap::bromwich_invert(image, 1.0);
    CHECK(res.reality_warning);
    CHECK(std::abs(res.value - 1.5) <= 1e-4);
    CHECK(std::abs(res.reality_defect - 0.5) <= 1e-4);

    const auto res2 = bilap::residue_invert(image, 1.0);
    CHECK(res2.reality_warning);
    CHECK(std::abs(res2.value - 1.5) <= 1e-12);
    CHECK(std::abs(res2.reality_defect - 0.5) <= 1e-12);
}

TEST_CASE("bromwich_invert gates COMPONENTS images on the decay probe") {
    const auto flat = bilap::make_component_image(
        [](Complex) { return Complex(1.0, 0.0); },
        [](Complex) { return Complex(1.0, 0.0); }, 0.0);
    CHECK_THROWS_AS(bilap::bromwich_invert(flat, 1.0), bilap::InvalidImageError);

    // a decaying COMPONENTS image works without rational structure
    const auto decaying = bilap::make_component_image(
        [](Complex s) { return 1.0 / (s + 1.0); },
        [](Complex s) { return 1.0 / (s + 1.0); }, -1.0);
    const auto res = bilap::bromwich_invert(decaying, 1.5);
    CHECK(std::abs(res.value - std::exp(-1.5)) <= 1e-4);
}

TEST_CASE("invert_grid: sin pair against the closed form") {
    const ImageFunction image = catalog_image_for("sin", 2.0);
    std::vector<double> grid;
    for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);

    const auto residue = bilap::invert_grid(image, grid, {}, InversionMethod::Residue);
    double max_res = 0.0;
    for (const auto& pt : residue) {
        REQUIRE(pt.ok);
        CHECK(pt.refinements == 0);
        max_res = std::max(max_res, std::abs(pt.value - std::sin(2.0 * pt.t)));
    }
    CHECK(max_res <= 1e-9);

    const auto bromwich = bilap::invert_grid(image, grid, {}, InversionMethod::Bromwich);
    double max_brom = 0.0;
    for (const auto& pt : bromwich) {
        REQUIRE(pt.ok);
        CHECK(pt.refinements >= 1);
        max_brom = std::max(max_brom, std::abs(pt.value - std::sin(2.0 * pt.t)));
    }
    CHECK(max_brom <= 1e-4);
}

TEST_CASE("invert_grid validates the grid") {
    const ImageFunction image = catalog_image_for("unit_step");
    CHECK_THROWS_AS(bilap::invert_grid(image, {0.0, 0.1, 0.2}, {}, InversionMethod::Auto),
                    bilap::DomainError);
    CHECK_THROWS_AS(bilap::invert_grid(image, {-1.0}, {}, InversionMethod::Auto),
                    bilap::DomainError);
    CHECK_THROWS_AS(bilap::invert_grid(image, {0.2, 0.1}, {}, InversionMethod::Auto),
                    bilap::InvalidArgumentError);
    CHECK_THROWS_AS(bilap::invert_grid(image, {}, {}, InversionMethod::Auto),
                    bilap::InvalidArgumentError);
    // residue method demands rational structure
    const auto components = bilap::make_component_image(
        [](Complex s) { return 1.0 / s; }, [](Complex s) { return 1.0 / s; }, 0.0);
    CHECK_THROWS_AS(
        bilap::invert_grid(components, {1.0}, {}, InversionMethod::Residue),
        bilap::InvalidArgumentError);
}

TEST_CASE("methods agree across the catalog") {
    for (const auto& id : bilap::catalog_ids()) {
        const ImageFunction image = catalog_image_for(id, 2.0, 0.5);
        for (const double t : {0.5, 1.0, 2.0, 5.0}) {
            const auto res = bilap::residue_invert(image, t);
            const auto brom = bilap::bromwich_invert(image, t);
            CHECK(std::abs(res.value - brom.value) <= 2e-4);
        }
    }
}

TEST_CASE("inversion is linear on rationals (common denominator)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    const auto combine = [](const RationalFunction& f, const RationalFunction& g,
                            double alpha, double beta) {
        // alpha f + beta g = (alpha num_f den_g + beta num_g den_f) / (den_f den_g)
        const auto num = bilap::poly_add(
            bilap::poly_scale(bilap::poly_mul(f.num, g.den), {alpha, 0.0}),
            bilap::poly_scale(bilap::poly_mul(g.num, f.den), {beta, 0.0}));
        return bilap::make_rational(num, bilap::poly_mul(f.den, g.den));
    };

    // distinct poles and shared poles (the latter produce double poles)
    const RationalFunction f1 =
        bilap::catalog_lookup("sin", {{"omega", 1.0}}).image;
    const RationalFunction g_distinct =
        bilap::catalog_lookup("cos", {{"omega", 2.0}}).image;
    const RationalFunction g_shared =
        bilap::catalog_lookup("cos", {{"omega", 1.0}}).image;

    for (const RationalFunction& g : {g_distinct, g_shared}) {
        const double alpha = coeff(rng);
        const double beta = coeff(rng);
        const RationalFunction combo = combine(f1, g, alpha, beta);
        const ImageFunction combo_image = bilap::make_rational_image(combo, combo, 0.0);
        const ImageFunction f_image = bilap::make_rational_image(f1, f1, 0.0);
        const ImageFunction g_image = bilap::make_rational_image(g, g, 0.0);
        for (const double t : {0.3, 1.0, 2.7}) {
            const double lhs = bilap::residue_invert(combo_image, t).value;
            const double rhs = alpha * bilap::residue_invert(f_image, t).value +
                               beta * bilap::residue_invert(g_image, t).value;
            CHECK(std::abs(lhs - rhs) <= 1e-9);
        }
    }
}

TEST_CASE("equal components degenerate to the classical inversion") {
    const ImageFunction image = catalog_image_for("damped_cos", 2.0, 1.0);
    const auto& r = image.rational().r1;

    for (const double t : {0.5, 2.0}) {
        // residue route vs direct single-component residue sum
        Complex direct(0.0, 0.0);
        for (const auto& p : bilap::find_poles(r)) {
            direct += bilap::residue_at(r, p.location, p.multiplicity, t);
        }
        const auto res = bilap::residue_invert(image, t);
        CHECK(std::abs(res.value - direct.real()) <= 1e-10);

        // Bromwich route vs direct single-component line integral
        const auto fj = [&r](Complex s) { return bilap::rational_eval(r, s); };
        const double k = bilap::find_poles(r).back().location.real();
        const auto component = bilap::bromwich_component(fj, std::max(k, image.abscissa_k), t);
        const auto brom = bilap::bromwich_invert(image, t);
        CHECK(std::abs(brom.value - component.value.real()) <= 1e-10);
    }
}

TEST_CASE("multiple-pole extension: 1/(xi+1)^2 inverts to t e^{-t}") {
    const RationalFunction dbl = bilap::make_rational({{1.0}}, {{1.0}, {2.0}, {1.0}});
    const ImageFunction image = bilap::make_rational_image(dbl, dbl, -1.0);
    for (int i = 1; i <= 50; ++i) {
        const double t = 0.1 * i;
        const double want = t * std::exp(-t);
        CHECK(std::abs(bilap::residue_invert(image, t).value - want) <= 1e-8);
    }
    for (const double t : {0.5, 1.0, 3.0}) {
        CHECK(std::abs(bilap::bromwich_invert(image, t).value - t * std::exp(-t)) <= 1e-3);
    }
}

TEST_CASE("x*t cap shrinks the abscissa offset and flags it") {
    const ImageFunction image = catalog_image_for("unit_step");
    bilap::BromwichConfig cfg;
    cfg.xt_cap = 3.0;
    const auto res = bilap::bromwich_invert(image, 5.0, cfg);
    CHECK(res.abscissa_capped);
    CHECK(res.abscissa == doctest::Approx(3.0 / 5.0));
    CHECK(std::abs(res.value - 1.0) <= 1e-4);

    const auto uncapped = bilap::bromwich_invert(image, 1.0, cfg);
    CHECK_FALSE(uncapped.abscissa_capped);
    CHECK(uncapped.abscissa == doctest::Approx(1.0));
}

TEST_CASE("BromwichConfig validation") {
    bilap::BromwichConfig cfg;
    cfg.abscissa_offset = 0.0;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
    cfg = {};
    cfg.refine_tol = -1.0;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
    cfg = {};
    cfg.max_refinements = 0;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
}
