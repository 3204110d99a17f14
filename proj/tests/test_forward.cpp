#include <doctest.h>

#include <cmath>
#include <random>

#include "bilap/forward.hpp"
#include "oracles.hpp"

using bilap::Bicomplex;
using bilap::Complex;

namespace {

Bicomplex random_in_region(std::mt19937& rng, double k) {
    std::uniform_real_distribution<double> re(k + 0.5, k + 3.0);
    std::uniform_real_distribution<double> im(-3.0, 3.0);
    return bilap::from_idempotent({{re(rng), im(rng)}, {re(rng), im(rng)}});
}

bilap::SignalSpec catalog_object(const std::string& id, double omega, double a) {
    std::map<std::string, double> params;
    for (const auto& name : bilap::catalog_params(id)) {
        params[name] = name == "omega" ? omega : a;
    }
    return bilap::catalog_lookup(id, params).object;
}

}  // namespace

TEST_CASE("in_region: examples") {
    CHECK(bilap::in_region(Bicomplex(2.0), 0.0));
    // e1 - e2 has components (1, -1)
    CHECK_FALSE(bilap::in_region(Bicomplex::e1() - Bicomplex::e2(), 0.0));
    // 3 e1 + (1 + i1) e2: component real parts 3 and 1
    const Bicomplex xi = bilap::from_idempotent({{3.0, 0.0}, {1.0, 1.0}});
    CHECK(bilap::in_region(xi, 0.5));
    CHECK_FALSE(bilap::in_region(xi, 1.5));
}

TEST_CASE("laplace_point: catalog anchor values") {
    const auto step = catalog_object("unit_step", 0, 0);
    const Bicomplex f_step = bilap::laplace_point(step, Bicomplex(2.0));
    CHECK(std::abs(f_step.a0 - 0.5) <= 1e-8);
    CHECK(std::abs(f_step.a1) <= 1e-10);
    CHECK(std::abs(f_step.a2) <= 1e-10);
    CHECK(std::abs(f_step.a3) <= 1e-10);

    // omega/(xi^2+omega^2) at xi = 1, omega = 1: 1/2
    const auto sine = catalog_object("sin", 1.0, 0);
    const Bicomplex f_sin = bilap::laplace_point(sine, Bicomplex(1.0));
    CHECK(std::abs(f_sin.a0 - 0.5) <= 1e-8);
}

TEST_CASE("laplace_point refuses points outside D") {
    const auto step = catalog_object("unit_step", 0, 0);
    CHECK_THROWS_AS(
        bilap::laplace_point(step, Bicomplex::e1() - Bicomplex::e2()),
        bilap::ConvergenceRegionError);
    // boundary point: Re(xi_j) = k is not inside the open region
    CHECK_THROWS_AS(bilap::laplace_point(step, Bicomplex::e1() * 2.0),
                    bilap::ConvergenceRegionError);
}

TEST_CASE("laplace_point truncation guard for near-boundary points") {
    const auto step = catalog_object("unit_step", 0, 0);
    // inside the region but so close to the boundary that the tail bound
    // needs an absurd horizon
    CHECK_THROWS_AS(bilap::laplace_point(step, Bicomplex(2e-6)),
                    bilap::TruncationError);
}

TEST_CASE("laplace_grid: per-point statuses, no global abort") {
    const auto step = catalog_object("unit_step", 0, 0);

    const auto single = bilap::laplace_grid(step, {Bicomplex(2.0)});
    REQUIRE(single.size() == 1);
    CHECK(single[0].ok);
    CHECK(std::abs(single[0].value.a0 - 0.5) <= 1e-8);

    std::mt19937 rng(99);
    std::vector<Bicomplex> xis;
    for (int i = 0; i < 5; ++i) xis.push_back(random_in_region(rng, 0.0));
    const auto points = bilap::laplace_grid(step, xis);
    const bilap::RationalFunction inv_xi = bilap::make_rational({{1.0}}, {{0.0}, {1.0}});
    for (const auto& pt : points) {
        REQUIRE(pt.ok);
        const auto p = bilap::to_idempotent(pt.xi);
        const Bicomplex want = bilap::from_idempotent(
            {bilap::rational_eval(inv_xi, p.xi1), bilap::rational_eval(inv_xi, p.xi2)});
        CHECK(bilap::norm(pt.value - want) <= 1e-8);
    }

    // mixed in/out-of-region: statuses are collected per point
    const auto mixed = bilap::laplace_grid(
        step, {Bicomplex(2.0), Bicomplex::e1() - Bicomplex::e2(), Bicomplex(1.0)});
    REQUIRE(mixed.size() == 3);
    CHECK(mixed[0].ok);
    CHECK_FALSE(mixed[1].ok);
    CHECK(mixed[1].error.find("region") != std::string::npos);
    CHECK(mixed[2].ok);
}

TEST_CASE("transform is linear in the signal") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const auto f = catalog_object("sin", 2.0, 0);
    const auto g = catalog_object("cos", 1.0, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const double alpha = coeff(rng);
        const double beta = coeff(rng);
        const auto combo = bilap::make_signal(
            [&, alpha, beta](double t) { return alpha * f.eval(t) + beta * g.eval(t); },
            0.0, "combo");
        const Bicomplex xi = random_in_region(rng, 0.0);
        const Bicomplex lhs = bilap::laplace_point(combo, xi);
        const Bicomplex rhs =
            alpha * bilap::laplace_point(f, xi) + beta * bilap::laplace_point(g, xi);
        CHECK(bilap::norm(lhs - rhs) <= 1e-8 * (1.0 + bilap::norm(rhs)));
    }
}

TEST_CASE("idempotent consistency: recombination never mixes components") {
    // compare against an independent Simpson evaluation of each component
    bilap::QuadratureConfig cfg;
    cfg.tail_tol = 1e-12;
    const auto f = catalog_object("damped_sin", 2.0, 0.5);
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 3; ++trial) {
        const Bicomplex xi = random_in_region(rng, 0.0);
        const auto p = bilap::to_idempotent(xi);
        const Bicomplex value = bilap::laplace_point(f, xi, cfg);
        const auto got = bilap::to_idempotent(value);
        const Complex want1 = oracles::simpson_laplace(f.eval, p.xi1, 60.0, 200000);
        const Complex want2 = oracles::simpson_laplace(f.eval, p.xi2, 60.0, 200000);
        CHECK(std::abs(got.xi1 - want1) <= 1e-10);
        CHECK(std::abs(got.xi2 - want2) <= 1e-10);
    }
}

TEST_CASE("reality on the real axis") {
    const auto f = catalog_object("cos", 2.0, 0);
    for (const double x : {0.5, 1.0, 3.0}) {
        const Bicomplex value = bilap::laplace_point(f, Bicomplex(x));
        CHECK(std::abs(value.a1) <= 1e-8);
        CHECK(std::abs(value.a2) <= 1e-8);
        CHECK(std::abs(value.a3) <= 1e-8);
    }
}

TEST_CASE("numerical transform agrees with the rational catalog images") {
    std::mt19937 rng(2718);
    for (const auto& id : bilap::catalog_ids()) {
        std::map<std::string, double> params;
        for (const auto& name : bilap::catalog_params(id)) {
            params[name] = name == "omega" ? 2.0 : 0.5;
        }
        const auto entry = bilap::catalog_lookup(id, params);
        for (int trial = 0; trial < 10; ++trial) {
            const Bicomplex xi = random_in_region(rng, entry.order_k);
            const auto p = bilap::to_idempotent(xi);
            const Bicomplex want = bilap::from_idempotent(
                {bilap::rational_eval(entry.image, p.xi1),
                 bilap::rational_eval(entry.image, p.xi2)});
            const Bicomplex got = bilap::laplace_point(entry.object, xi);
            CHECK(bilap::norm(got - want) <= 1e-7);
        }
    }
}

TEST_CASE("degenerate bicomplex point reproduces the classical transform") {
    const auto f = catalog_object("sin", 1.0, 0);
    // xi with a2 = a3 = 0 is the complex number z1 in both components
    const Bicomplex xi(1.5, 0.7, 0.0, 0.0);
    const Bicomplex value = bilap::laplace_point(f, xi);
    const auto p = bilap::to_idempotent(value);
    CHECK(std::abs(p.xi1 - p.xi2) <= 1e-12);
    // classical F(z) = 1/(z^2+1) at z = 1.5 + 0.7i
    const Complex z(1.5, 0.7);
    const Complex classical = 1.0 / (z * z + 1.0);
    CHECK(std::abs(p.xi1 - classical) <= 1e-8);
}

TEST_CASE("fixed-composite rule evaluates without refinement") {
    const auto step = catalog_object("unit_step", 0, 0);
    bilap::QuadratureConfig cfg;
    cfg.rule = bilap::QuadratureConfig::Rule::FixedComposite;
    cfg.n_panels = 64;
    const Bicomplex value = bilap::laplace_point(step, Bicomplex(2.0), cfg);
    CHECK(std::abs(value.a0 - 0.5) <= 1e-6);
}

TEST_CASE("QuadratureConfig validation") {
    bilap::QuadratureConfig cfg;
    cfg.n_panels = 4;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
    cfg.n_panels = 16;
    cfg.t_max = -1.0;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
    cfg.t_max = 10.0;
    cfg.tail_tol = 0.0;
    CHECK_THROWS_AS(bilap::validate(cfg), bilap::InvalidArgumentError);
}
