#pragma once

#include <tuple>

#include "bilem/types.hpp"

namespace bilem {

/// Closed-form constants attached to a parameter pair (n, p).
///
/// K0 is the amplitude constant of the singular solution
///   u_s(r) = K0^{1/(p-1)} r^{-4/(p-1)},
/// J1, J2 are the coefficients of the reduced equation on the unit sphere
/// satisfied by homogeneous profiles, and alpha/beta/cNP are the constants
/// entering the energy monotonicity bound.  J2 == K0 as an algebraic
/// identity; both are computed independently and tests pin the agreement.
struct DerivedConstants {
    double gamma = 0.0;        ///< 4/(p-1)
    double K0 = 0.0;           ///< gamma(gamma+2)(gamma-n+4)(gamma-n+2)
    ExtendedReal pS;           ///< Sobolev exponent (n+4)/(n-4), +inf for n <= 4
    ExtendedReal pC;           ///< fourth-order Joseph-Lundgren exponent, +inf for n <= 12
    double hardyRellich = 0.0; ///< n^2 (n-4)^2 / 16
    double alpha = 0.0;        ///< n - 1 - 8/(p-1)
    double beta = 0.0;         ///< gamma (gamma - n + 2)
    double cNP = 0.0;          ///< 2 alpha - 2 beta - 2
    double J1 = 0.0;           ///< (gamma+2)(n-4-gamma) + gamma(n-2-gamma)
    double J2 = 0.0;           ///< gamma(gamma+2)(n-4-gamma)(n-2-gamma)
    double omega = 0.0;        ///< surface area of the unit sphere S^{n-1}
};

/// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// Sobolev exponent p_S(n): +inf for n <= 4, (n+4)/(n-4) for n >= 5.
ExtendedReal sobolev_exponent(int n);

/// Fourth-order Joseph-Lundgren exponent p_c(n): +inf for n <= 12,
/// closed-form quartic root for n >= 13.
ExtendedReal joseph_lundgren_exponent(int n);

/// All derived constants for (n, p).  Throws std::domain_error for
/// p <= 1 or n < 1.
DerivedConstants derive_constants(const ProblemParams& params);

/// True when (n, p) is in the supercritical range n >= 5, p > p_S(n).
bool is_supercritical(const ProblemParams& params);

/// Stability of the singular solution u_s: p K0 <= n^2 (n-4)^2 / 16.
/// Non-strict comparison; ties within a relative machine-noise band count
/// as stable so that the three equivalent predicates (amplitude test,
/// p >= p_c(n), n >= n_p) agree at the boundary.  Requires the
/// supercritical range and throws std::domain_error outside it.
bool is_singular_solution_stable(const ProblemParams& params);

/// Same predicate routed through the closed-form exponent: p >= p_c(n),
/// with the matching boundary tolerance.
bool stable_by_joseph_lundgren(const ProblemParams& params);

/// Smallest dimension n with n >= 5, p > p_S(n) and p K0 <= n^2(n-4)^2/16,
/// found by upward scan.  The scan terminates: the amplitude condition
/// holds for every sufficiently large n.
int min_stable_dimension(double p);

/// Margins (p-1, p J1 - n(n-4)/2, p J2 - n^2(n-4)^2/16) controlling the
/// nonexistence of nontrivial homogeneous stable profiles.  All three are
/// strictly positive for p_S(n) < p < p_c(n); the third vanishes at
/// p = p_c(n) and turns negative beyond it.
std::tuple<double, double, double> homogeneous_triviality_margins(const ProblemParams& params);

/// Admissibility condition for the negative-exponent energy variant
/// (equation Delta^2 u = -u^{-p}, u > 0):
///   n - 2 + 8/(p+1) > (4/(p+1)) (4/(p+1) + n - 2).
/// Requires p > 0 only.
bool negative_exponent_condition(int n, double p);

}  // namespace bilem
