#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bilem {

/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
/// Returns w[m][j] such that f^{(m)}(z) ~ sum_j w[m][j] f(x[j]) for
/// m = 0..maxOrder.  Requires maxOrder < x.size().
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int maxOrder);

/// m-th derivative of sampled data at grid index i using a centered window
/// of `points` nodes (clipped at the ends).  points must exceed m.
double fd_derivative(std::span<const double> x, std::span<const double> f, std::size_t i, int m,
                     int points);

/// Radial Laplacian u'' + (n-1) u'/r of sampled data at index i > 0,
/// from a `points`-node window.
double fd_radial_laplacian(std::span<const double> r, std::span<const double> u, std::size_t i,
                           int n, int points);

/// Cumulative integral of samples (x, f) by local cubic quadrature:
/// out[i] = integral of the interpolant from x[0] to x[i], out[0] = 0.
/// Third-order accurate on smooth data and nonuniform grids.
std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> f);

}  // namespace bilem
