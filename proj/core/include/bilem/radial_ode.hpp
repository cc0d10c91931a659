#pragma once

#include <span>
#include <vector>

#include "bilem/radial_field.hpp"
#include "bilem/types.hpp"

namespace bilem {

/// Controls for the radial initial-value integration.
struct IntegrationConfig {
    double originStart = 1e-6;     ///< Taylor handoff radius r0; 0 < r0 << 1
    double blowupThreshold = 0.0;  ///< |u| event level; 0 = 1e6 * max(|a|, 1e-6)
    double relTol = 1e-10;
    double absTol = 1e-12;
    double rMax = 100.0;
    double hMax = 0.0;  ///< 0 = rMax / 64

    void validate() const;
    double blowup_level(double a) const;
};

enum class EventKind { None, Crossing, Blowup, Failure };

/// Integration outcome: the field up to rMax or the first event.
struct IntegrationResult {
    RadialField field;
    EventKind event = EventKind::None;
    double eventRadius = 0.0;
};

/// Integrates u'' = v - (n-1)u'/r, v'' = f(u) - (n-1)v'/r from the origin
/// values u(0) = a, v(0) = b (second-order Taylor start at r = originStart)
/// together with the running integrals intA, intB.  Steps adaptively with
/// dense output; stops at rMax, a sign change of u, or |u| crossing the
/// blow-up threshold.  Step-size underflow and non-finite states report
/// EventKind::Failure.
IntegrationResult integrate(const ProblemParams& params, double a, double b,
                            const IntegrationConfig& cfg, SourceKind kind = SourceKind::Power);

/// Exact singular solution u_s(r) = K0^{1/(p-1)} r^{-4/(p-1)} sampled on
/// the given grid (positive radii).  Requires the supercritical range so
/// that K0 > 0; throws std::domain_error otherwise.
RadialField singular_field(const ProblemParams& params, std::span<const double> grid);

/// Exact growing profile u(r) = C r^{4/(p+1)} solving Delta^2 u = -u^{-p},
/// with C = (m(m+n-2)(2-m)(m+n-4))^{-1/(p+1)}, m = 4/(p+1).
RadialField negative_homogeneous_field(const ProblemParams& params, std::span<const double> grid);

/// Calibrated entire solution: bisection on b = v(0) between the
/// "u crosses zero" and "u blows up" event classes.
struct ShootingResult {
    double a = 0.0;
    double bStar = 0.0;
    RadialField field;
    double decayExponent = 0.0;        ///< fitted slope of log|u| vs log r on the tail
    double tailAmplitude = 0.0;        ///< fitted prefactor C in u ~ C r^{decayExponent}
    std::pair<double, double> bracket{0.0, 0.0};
    EventKind finalEvent = EventKind::None;
};

struct ShootingConfig {
    IntegrationConfig integration{};
    double bracketRelTol = 1e-14;  ///< stop when bracket width <= tol * |b|
    int maxBisections = 200;
    int maxBracketGrowth = 60;
};

ShootingResult shoot_entire(const ProblemParams& params, double a, const ShootingConfig& cfg = {});

/// Independent finite-difference check of the first-order system on the
/// stored grid: max over interior points of |Lap_h u - v| and
/// |Lap_h v - f(u)| from `points`-node centered stencils of the sampled
/// values alone.
struct ResidualReport {
    double maxAbs = 0.0;    ///< worst absolute system residual
    double relative = 0.0;  ///< maxAbs / (1 + max(max|v|, max|f(u)|))
};

ResidualReport residual_report(const RadialField& field, int points = 7);

/// Scalar form: the absolute residual of residual_report.
double residual(const RadialField& field, int points = 7);

/// Radial test function for the stability quadratic form; must vanish at
/// both ends of its grid and live inside the field's sampled range.
struct TestProfile {
    std::vector<double> r, phi;
};

/// Second-variation quadratic form
///   Lambda_u(phi) = int |Delta phi|^2 - p int |u|^{p-1} phi^2
/// over R^n, reduced to the radial measure omega r^{n-1} dr.  Delta phi
/// comes from centered stencils on the profile grid.  Throws on support
/// violations.
double stability_form(const RadialField& field, const TestProfile& profile);

/// Truncated Hardy-Rellich quasi-optimizer r^{-(n-4)/2} with C^2 cutoffs
/// at scales [eps, 1/eps]; the standard destabilizing family.
TestProfile hardy_rellich_profile(int n, double eps, std::size_t gridSize = 4000);

/// Smooth radial bump exp(1 - 1/(1 - t^2)) in t = log(r/center)/width,
/// supported on [center e^{-width}, center e^{width}].
TestProfile log_bump_profile(double center, double width, std::size_t gridSize = 2000);

/// Least-squares fit of log|y| vs log x over [xLo, xHi]; returns
/// {amplitude, exponent}.
std::pair<double, double> fit_power_law(std::span<const double> x, std::span<const double> y,
                                        double xLo, double xHi);

}  // namespace bilem
