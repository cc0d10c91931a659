#pragma once

#include <span>
#include <vector>

#include "bilem/radial_field.hpp"

namespace bilem {

/// Sampled monotone energy r -> E(r; 0, u) with centered-difference slopes
/// and the quantitative lower bound
///   lowerBound(r) = cNP * r^{-n+2+8/(p-1)} * omega r^{n-1} * (gamma u/r + u')^2.
/// dE >= lowerBound - slack at every interior sample for solutions in the
/// supercritical range; slack absorbs differencing noise on quadrature
/// values (10 * quadrature tolerance / local spacing).
struct EnergyProfile {
    std::vector<double> radii, E, dE, lowerBound;
    double slack = 0.0;
    bool monotone = false;   ///< min dE >= -slack
    double minDefect = 0.0;  ///< min over interior samples of dE - lowerBound
};

/// Rescaled energy of the radial problem at radius r, boundary terms
/// expanded analytically through u'' (from the first-order system).
/// Requires the supercritical range, SourceKind::Power, and r inside the
/// trusted sampled range.
double energy_radial(const RadialField& field, double r);

/// Same value with the d/dr boundary terms evaluated by centered numeric
/// differentiation of the unexpanded surface integrals; the independent
/// route used to cross-check energy_radial.
double energy_radial_unexpanded(const RadialField& field, double r);

EnergyProfile energy_profile(const RadialField& field, std::span<const double> radii);

/// Energy of the homogeneous profile u = w r^{-4/(p-1)} (constant w on the
/// sphere): (1/(n - 4(p+1)/(p-1))) (1/2 - 1/(p+1)) omega |w|^{p+1}.
/// The supercritical range gives n - 4(p+1)/(p-1) > 0, which is also what
/// makes the small-ball energy finite.
double homogeneous_energy(const ProblemParams& params, double wConst);

/// Equivalent form with |u|^{p+1} traded for (Delta u)^2 plus surface
/// terms; agrees with homogeneous_energy exactly when w^{p-1} = J2.
double homogeneous_energy_laplacian_form(const ProblemParams& params, double wConst);

/// Monotone energy variant for Delta^2 u = -u^{-p} (u > 0), with the
/// substitutions -4/(p+1) for 4/(p-1) and u^{1-p}/(p-1) for the potential.
/// Requires negative_exponent_condition(n, p) and a NegativePower field.
double negative_energy_radial(const RadialField& field, double r);

EnergyProfile negative_energy_profile(const RadialField& field, std::span<const double> radii);

/// Small-radius limit of E(r; 0, u) by Aitken extrapolation on a
/// decreasing radius sequence; zero at smooth points.
struct DensityEstimate {
    std::vector<double> radii, values;
    double extrapolated = 0.0;
};

DensityEstimate density_estimate(const RadialField& field, std::span<const double> radiiDescending);

}  // namespace bilem
