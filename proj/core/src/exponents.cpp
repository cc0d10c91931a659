#include "bilem/exponents.hpp"

#include <cmath>
#include <cstdio>

namespace bilem {

namespace {

// Relative band treated as a tie in the boundary comparisons.  The three
// stability predicates are algebraically equivalent but follow different
// floating-point routes; without the band they could disagree by one ulp
// exactly at p = p_c(n).
constexpr double kBoundaryRelTol = 1e-11;

double amplitude_constant(int n, double p) {
    const double g = 4.0 / (p - 1.0);
    return g * (g + 2.0) * (g - n + 4.0) * (g - n + 2.0);
}

double hardy_rellich_constant(int n) {
    const double a = static_cast<double>(n) * (n - 4.0);
    return a * a / 16.0;
}

}  // namespace

std::string ExtendedReal::str() const {
    if (infinite_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::domain_error("unit_sphere_area: n must be >= 1");
    const double pi = 3.14159265358979323846;
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

ExtendedReal sobolev_exponent(int n) {
    if (n < 1) throw std::domain_error("sobolev_exponent: n must be >= 1");
    if (n <= 4) return ExtendedReal::infinity();
    return ExtendedReal::finite((n + 4.0) / (n - 4.0));
}

ExtendedReal joseph_lundgren_exponent(int n) {
    if (n < 1) throw std::domain_error("joseph_lundgren_exponent: n must be >= 1");
    if (n <= 12) return ExtendedReal::infinity();
    const double x = std::sqrt(n * std::sqrt(static_cast<double>(n) * n - 8.0 * n + 32.0));
    const double s = std::sqrt(static_cast<double>(n) * n + 4.0 - x * x);
    return ExtendedReal::finite((n + 2.0 - s) / (n - 6.0 - s));
}

DerivedConstants derive_constants(const ProblemParams& params) {
    params.validate();
    const int n = params.n;
    const double p = params.p;
    const double g = params.gamma();

    DerivedConstants c;
    c.gamma = g;
    c.K0 = amplitude_constant(n, p);
    c.pS = sobolev_exponent(n);
    c.pC = joseph_lundgren_exponent(n);
    c.hardyRellich = hardy_rellich_constant(n);
    c.alpha = n - 1.0 - 8.0 / (p - 1.0);
    c.beta = g * (g - n + 2.0);
    c.cNP = 2.0 * c.alpha - 2.0 * c.beta - 2.0;
    c.J1 = (g + 2.0) * (n - 4.0 - g) + g * (n - 2.0 - g);
    c.J2 = g * (g + 2.0) * (n - 4.0 - g) * (n - 2.0 - g);
    c.omega = unit_sphere_area(n);
    return c;
}

bool is_supercritical(const ProblemParams& params) {
    params.validate();
    return params.n >= 5 && params.p > sobolev_exponent(params.n);
}

bool is_singular_solution_stable(const ProblemParams& params) {
    if (!is_supercritical(params))
        throw std::domain_error("is_singular_solution_stable: requires n >= 5 and p > (n+4)/(n-4)");
    const double lhs = params.p * amplitude_constant(params.n, params.p);
    const double rhs = hardy_rellich_constant(params.n);
    return lhs <= rhs * (1.0 + kBoundaryRelTol);
}

bool stable_by_joseph_lundgren(const ProblemParams& params) {
    if (!is_supercritical(params))
        throw std::domain_error("stable_by_joseph_lundgren: requires n >= 5 and p > (n+4)/(n-4)");
    const ExtendedReal pc = joseph_lundgren_exponent(params.n);
    if (pc.is_infinite()) return false;
    return params.p >= pc.value() * (1.0 - kBoundaryRelTol);
}

int min_stable_dimension(double p) {
    if (!(p > 1.0)) throw std::domain_error("min_stable_dimension: p must be > 1");
    // p K0 ~ 8 p (n-4)(n-2)/(p-1)^k grows quadratically in n while the
    // Hardy-Rellich constant grows quartically, so the scan terminates.
    for (int n = 5;; ++n) {
        const ProblemParams q{n, p};
        if (!is_supercritical(q)) continue;
        if (is_singular_solution_stable(q)) return n;
    }
}

std::tuple<double, double, double> homogeneous_triviality_margins(const ProblemParams& params) {
    params.validate();
    if (params.n < 5)
        throw std::domain_error("homogeneous_triviality_margins: requires n >= 5");
    const DerivedConstants c = derive_constants(params);
    const double m1 = params.p - 1.0;
    const double m2 = params.p * c.J1 - 0.5 * params.n * (params.n - 4.0);
    const double m3 = params.p * c.J2 - c.hardyRellich;
    return {m1, m2, m3};
}

bool negative_exponent_condition(int n, double p) {
    if (n < 1) throw std::domain_error("negative_exponent_condition: n must be >= 1");
    if (!(p > 0.0)) throw std::domain_error("negative_exponent_condition: p must be > 0");
    const double m = 4.0 / (p + 1.0);
    return n - 2.0 + 2.0 * m > m * (m + n - 2.0);
}

}  // namespace bilem
