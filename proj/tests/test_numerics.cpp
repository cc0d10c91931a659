#include <cmath>
#include <random>
#include <vector>

#include "bilem/dopri5.hpp"
#include "bilem/pchip.hpp"
#include "bilem/stencils.hpp"
#include "doctest.h"

using namespace bilem;

TEST_CASE("fornberg weights reproduce classic uniform stencils") {
    const std::vector<double> x{-2, -1, 0, 1, 2};
    const auto w = fd_weights(0.0, x, 2);
    // first derivative: (1, -8, 0, 8, -1)/12
    CHECK(w[1][0] == doctest::Approx(1.0 / 12).epsilon(1e-13));
    CHECK(w[1][1] == doctest::Approx(-8.0 / 12).epsilon(1e-13));
    CHECK(w[1][3] == doctest::Approx(8.0 / 12).epsilon(1e-13));
    // second derivative: (-1, 16, -30, 16, -1)/12
    CHECK(w[2][0] == doctest::Approx(-1.0 / 12).epsilon(1e-13));
    CHECK(w[2][2] == doctest::Approx(-30.0 / 12).epsilon(1e-13));
}

TEST_CASE("fd_derivative on a nonuniform grid is exact for polynomials") {
    std::vector<double> x;
    for (int i = 0; i < 30; ++i) x.push_back(0.1 * i + 0.02 * std::sin(3.0 * i));
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        f[i] = 2.0 + x[i] * (3.0 + x[i] * (-1.0 + 0.5 * x[i]));
    for (std::size_t i : {std::size_t(0), std::size_t(7), std::size_t(29)}) {
        const double d1 = 3.0 - 2.0 * x[i] + 1.5 * x[i] * x[i];
        const double d2 = -2.0 + 3.0 * x[i];
        CHECK(fd_derivative(x, f, i, 1, 5) == doctest::Approx(d1).epsilon(1e-11));
        CHECK(fd_derivative(x, f, i, 2, 5) == doctest::Approx(d2).epsilon(1e-9));
    }
}

TEST_CASE("radial laplacian stencil against an analytic profile") {
    const int n = 13;
    std::vector<double> r, u;
    for (int i = 0; i <= 2000; ++i) {
        const double rr = 0.5 * std::exp(1.4e-3 * i);
        r.push_back(rr);
        u.push_back(std::pow(rr, -2.0));
    }
    // Delta r^e = e(e+n-2) r^{e-2}
    const double coef = -2.0 * (-2.0 + n - 2.0);
    for (std::size_t i = 100; i < r.size(); i += 371) {
        const double expect = coef * std::pow(r[i], -4.0);
        CHECK(fd_radial_laplacian(r, u, i, n, 7) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("cumulative integral: cubic exactness and smooth convergence") {
    std::vector<double> x, f;
    for (int i = 0; i <= 100; ++i) {
        x.push_back(i * 0.01);
        f.push_back(x.back() * x.back() * x.back());
    }
    const auto c = cumulative_integral(x, f);
    CHECK(c.back() == doctest::Approx(0.25).epsilon(1e-13));

    x.clear();
    f.clear();
    for (int i = 0; i <= 400; ++i) {
        x.push_back(i * 3.14159265358979323846 / 400.0);
        f.push_back(std::sin(x.back()));
    }
    CHECK(cumulative_integral(x, f).back() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("pchip: interpolation, monotonicity, range guard") {
    std::vector<double> x{0, 1, 2, 3, 4, 5};
    std::vector<double> y{0, 1, 8, 27, 64, 125};
    PchipInterpolant s(x, y);
    CHECK(s(2.0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(s(2.5) == doctest::Approx(15.625).epsilon(0.08));
    // monotone data stays monotone between nodes
    double prev = -1.0;
    for (double z = 0.0; z <= 5.0; z += 0.01) {
        CHECK(s(z) >= prev - 1e-12);
        prev = s(z);
    }
    CHECK_THROWS_AS(s(5.01), std::out_of_range);
    CHECK_THROWS_AS(s(-0.01), std::out_of_range);
}

namespace {

// y' = y with dense-output checks against exp.
OdeSolution run_exp(double rtol) {
    OdeRhs rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
    std::vector<double> y0{1.0};
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = rtol * 1e-2;
    return integrate_dopri5(rhs, 0.0, y0, 5.0, opt);
}

}  // namespace

TEST_CASE("dopri5: accuracy scales with the advertised order") {
    const OdeSolution a = run_exp(1e-6);
    const OdeSolution b = run_exp(1e-10);
    const double exact = std::exp(5.0);
    const double ea = std::abs(a.yEnd[0] - exact) / exact;
    const double eb = std::abs(b.yEnd[0] - exact) / exact;
    CHECK(ea < 1e-4);
    CHECK(eb < 1e-8);
    CHECK(eb < ea);

    // dense output stays within a factor of the step tolerance
    std::vector<double> out(1);
    for (double t = 0.1; t < 5.0; t += 0.37) {
        b.dense.eval(t, out);
        CHECK(out[0] == doctest::Approx(std::exp(t)).epsilon(1e-8));
    }
}

TEST_CASE("dopri5: event location on a crossing") {
    // y'' = -y started at (1, 0): first root of cos at pi/2.
    OdeRhs rhs = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    std::vector<double> y0{1.0, 0.0};
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    std::vector<OdeEvent> ev{{[](double, std::span<const double> y) { return y[0]; }, 0}};
    const OdeSolution sol = integrate_dopri5(rhs, 0.0, y0, 10.0, opt, ev);
    REQUIRE(sol.status == OdeStatus::Event);
    CHECK(sol.rEnd == doctest::Approx(1.5707963267948966).epsilon(1e-10));
}

TEST_CASE("property: pchip preserves monotonicity on random monotone data") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> step(0.05, 1.0), rise(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x{0.0}, y{0.0};
        for (int i = 0; i < 25; ++i) {
            x.push_back(x.back() + step(rng));
            y.push_back(y.back() + rise(rng));
        }
        PchipInterpolant s(x, y);
        double prev = s(x.front());
        for (double z = x.front(); z <= x.back(); z += (x.back() - x.front()) / 400.0) {
            CHECK(s(z) >= prev - 1e-11);
            prev = s(z);
        }
        // nodes are reproduced exactly
        for (std::size_t i = 0; i < x.size(); i += 5)
            CHECK(s(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
    }
}

TEST_CASE("property: stencil weights are exact on random polynomial data") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> gap(0.02, 0.5), coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x{0.3};
        for (int i = 0; i < 8; ++i) x.push_back(x.back() + gap(rng));
        const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng),
                     c4 = coef(rng);
        std::vector<double> f(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            f[i] = c0 + x[i] * (c1 + x[i] * (c2 + x[i] * (c3 + x[i] * c4)));
        const std::size_t mid = 4;
        const double d1 = c1 + x[mid] * (2 * c2 + x[mid] * (3 * c3 + x[mid] * 4 * c4));
        const double d2 = 2 * c2 + x[mid] * (6 * c3 + x[mid] * 12 * c4);
        CHECK(fd_derivative(x, f, mid, 1, 5) == doctest::Approx(d1).epsilon(1e-9));
        CHECK(fd_derivative(x, f, mid, 2, 5) == doctest::Approx(d2).epsilon(1e-8));
    }
}

TEST_CASE("dopri5: identical inputs give identical trajectories") {
    const OdeSolution a = run_exp(1e-9);
    const OdeSolution b = run_exp(1e-9);
    REQUIRE(a.rGrid.size() == b.rGrid.size());
    for (std::size_t i = 0; i < a.rGrid.size(); ++i) {
        CHECK(a.rGrid[i] == b.rGrid[i]);
        CHECK(a.yGrid[i][0] == b.yGrid[i][0]);
    }
}
