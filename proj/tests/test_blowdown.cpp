#include <cmath>

#include "bilem/blowdown.hpp"
#include "bilem/energy.hpp"
#include "bilem/exponents.hpp"
#include "bilem/radial_ode.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace bilem;
using testutil::log_grid;

namespace {

const RadialField& shooting_field() {
    static const ShootingResult sr = [] {
        ShootingConfig cfg;
        cfg.integration.relTol = 1e-12;
        cfg.integration.absTol = 1e-14;
        return shoot_entire({13, 3.0}, 1.0, cfg);
    }();
    return sr.field;
}

}  // namespace

TEST_CASE("rescale: identity at lambda = 1 and exact grid transform") {
    const RadialField& f = shooting_field();
    const RescaledField r1 = rescale(f, 1.0);
    CHECK(r1.field.r == f.r);
    CHECK(r1.field.u == f.u);

    const RescaledField r2 = rescale(f, 2.5);
    for (std::size_t i = 0; i < f.size(); i += 211) {
        CHECK(r2.field.r[i] == doctest::Approx(f.r[i] / 2.5).epsilon(1e-15));
        CHECK(r2.field.u[i] == doctest::Approx(std::pow(2.5, 2.0) * f.u[i]).epsilon(1e-14));
        CHECK(r2.field.v[i] == doctest::Approx(std::pow(2.5, 4.0) * f.v[i]).epsilon(1e-14));
    }
}

TEST_CASE("rescale leaves the singular field invariant") {
    const RadialField f = singular_field({16, 3.0}, log_grid(0.4, 2.2, 300));
    const RescaledField rf = rescale(f, 1.9);
    for (double r : {0.5, 1.0, 1.1}) {
        CHECK(rf.field.at(r).u == doctest::Approx(f.at(r).u).epsilon(1e-13));
        CHECK(rf.field.at(r).v == doctest::Approx(f.at(r).v).epsilon(1e-13));
    }
}

TEST_CASE("rescale composition law") {
    const RadialField& f = shooting_field();
    const RescaledField once = rescale(rescale(f, 1.3).field, 2.1);
    const RescaledField direct = rescale(f, 1.3 * 2.1);
    for (double r : {0.3, 1.0, 7.0}) {
        CHECK(once.field.at(r).u == doctest::Approx(direct.field.at(r).u).epsilon(1e-12));
        CHECK(once.field.at(r).intA == doctest::Approx(direct.field.at(r).intA).epsilon(1e-12));
    }
}

TEST_CASE("energy scaling invariance on a (r, lambda) grid") {
    const RadialField& f = shooting_field();
    for (double lam : {0.5, 0.9, 1.4, 2.3, 3.7}) {
        const RescaledField rf = rescale(f, lam);
        for (double r : {0.3, 0.9, 2.7, 8.1, 20.0}) {
            if (lam * r > 95.0) continue;
            const double e1 = energy_radial(rf.field, r);
            const double e2 = energy_radial(f, lam * r);
            CHECK(std::abs(e1 - e2) <= 1e-6 * std::max(1.0, std::abs(e2)));
        }
    }
}

TEST_CASE("resample reproduces the field within interpolation error") {
    const RadialField& f = shooting_field();
    const RadialField g = resample(f, log_grid(0.01, 50.0, 900));
    for (double r : {0.5, 2.0, 10.0})
        CHECK(g.at(r).u == doctest::Approx(f.at(r).u).epsilon(1e-8));
}

TEST_CASE("homogeneity deviation: zero on homogeneous, positive on smooth") {
    const RadialField sing = singular_field({13, 3.0}, log_grid(0.4, 2.2, 300));
    CHECK(homogeneity_deviation(sing, 0.5, 2.0) <= 1e-12);
    CHECK(homogeneity_deviation(shooting_field(), 0.2, 1.0) > 1e-2);
}

TEST_CASE("blow-down: window identity and the late-lambda trend") {
    const RadialField& f = shooting_field();
    // deviation of the rescaled field on [1, 2] equals the base deviation
    // on [lambda, 2 lambda]
    for (double lam : {2.0, 5.0, 11.0})
        CHECK(homogeneity_deviation(rescale(f, lam).field, 1.0, 2.0) ==
              doctest::Approx(homogeneity_deviation(f, lam, 2.0 * lam)).epsilon(1e-9));
    // once the energy approaches its plateau the windowed deviation decays;
    // at small lambda it can still grow with the energy climb (trend only)
    const double early = homogeneity_deviation(rescale(f, 8.0).field, 1.0, 2.0);
    const double late = homogeneity_deviation(rescale(f, 32.0).field, 1.0, 2.0);
    CHECK(late < early);
}

TEST_CASE("pohozaev identity on smooth solutions") {
    const RadialField& f = shooting_field();
    for (double R : {1.0, 5.0, 20.0}) {
        const PohozaevSplit s = pohozaev_split(f, R);
        CHECK(s.relative() <= 1e-6);
    }
    IntegrationConfig cfg;
    cfg.rMax = 10.0;
    const RadialField zero = integrate({13, 3.0}, 0.0, 0.0, cfg).field;
    CHECK(pohozaev_residual(zero, 5.0) == 0.0);
}

TEST_CASE("pohozaev scaling relation") {
    // both sides at (u, lambda R) pick up lambda^{n - 4(p+1)/(p-1)}
    // against the rescaled evaluation at (u^lambda, R)
    const RadialField& f = shooting_field();
    const double lam = 1.7, R = 2.0;
    const PohozaevSplit a = pohozaev_split(rescale(f, lam).field, R);
    const PohozaevSplit b = pohozaev_split(f, lam * R);
    const double power = std::pow(lam, 13.0 - 8.0);
    CHECK(b.lhs == doctest::Approx(power * a.lhs).epsilon(1e-10));
    CHECK(b.rhs == doctest::Approx(power * a.rhs).epsilon(1e-10));
}

TEST_CASE("pohozaev rejects fields singular at the origin") {
    const RadialField sing = singular_field({13, 3.0}, log_grid(0.4, 2.2, 300));
    CHECK_THROWS_AS(pohozaev_split(sing, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(pohozaev_split(shooting_field(), 1e-8), std::invalid_argument);
}

TEST_CASE("growth fit: exact power for the singular field, bounded for solutions") {
    const RadialField sing = singular_field({13, 3.0}, log_grid(0.4, 2.2, 300));
    const GrowthFit exact = growth_bound_check(sing, log_grid(0.5, 2.0, 12));
    CHECK(exact.exponent == doctest::Approx(5.0).epsilon(1e-12));  // n - 4(p+1)/(p-1)

    ShootingConfig cfg;
    cfg.integration.relTol = 1e-12;
    cfg.integration.absTol = 1e-14;
    const ShootingResult deep = shoot_entire({13, 3.0}, 16.0, cfg);
    const GrowthFit fit = growth_bound_check(deep.field, log_grid(5.0, 50.0, 20));
    CHECK(fit.exponent <= 5.05);
    CHECK(fit.exponent > 4.5);

    IntegrationConfig icfg;
    icfg.rMax = 10.0;
    const RadialField zero = integrate({13, 3.0}, 0.0, 0.0, icfg).field;
    CHECK(growth_bound_check(zero, log_grid(1.0, 8.0, 8)).degenerate);
}

TEST_CASE("adaptive quadrature sanity") {
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}
