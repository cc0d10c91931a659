#pragma once

#include <span>

#include "bilem/radial_field.hpp"

namespace bilem {

/// Rescaled solution u^lambda(r) = lambda^{4/(p-1)} u(lambda r) with the
/// matching derivative and integral transforms; grid = base grid / lambda.
/// The transform is exact (no interpolation).
struct RescaledField {
    double lambda = 1.0;
    RadialField field;
};

RescaledField rescale(const RadialField& field, double lambda);

/// Resampling of a field onto a new grid by shape-preserving cubic
/// interpolation of all columns.
RadialField resample(const RadialField& field, std::span<const double> newRadii);

/// Exact homogeneity defect over [r1, r2]:
///   omega int_{r1}^{r2} (gamma u / s + u')^2 s^{2 gamma + 1} ds,
/// zero precisely on profiles w r^{-gamma}.
double homogeneity_deviation(const RadialField& field, double r1, double r2);

/// Both sides of the radial Pohozaev identity over the ball B_R:
///   LHS = int_{B_R} (n-4)/2 (Delta u)^2 - n F(u)
///   RHS = surface terms at R (F the kind-specific potential; for the
///         Navier source F(u) = lambda (1+u)^{p+1}/(p+1)).
/// The identity holds for solutions smooth at the origin; profiles
/// singular at 0 are rejected.
struct PohozaevSplit {
    double lhs = 0.0, rhs = 0.0;
    double residual() const { return lhs - rhs; }
    double relative() const;
};

PohozaevSplit pohozaev_split(const RadialField& field, double R);

/// Scalar form LHS - RHS.
double pohozaev_residual(const RadialField& field, double R);

/// Least-squares power-law fit of R -> int_{B_R} (v^2 + |u|^{p+1}) over
/// the given radii; the exponent is bounded by n - 4(p+1)/(p-1) for
/// solutions with bounded energy density, with equality for homogeneous
/// profiles.
struct GrowthFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    bool degenerate = false;  ///< identically vanishing integrand
};

GrowthFit growth_bound_check(const RadialField& field, std::span<const double> radii);

/// Adaptive Simpson quadrature used by the defect integrals.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double relTol = 1e-12, double absTol = 1e-300);

}  // namespace bilem
