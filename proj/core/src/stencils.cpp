#include "bilem/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bilem {

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int maxOrder) {
    const int nd = static_cast<int>(x.size()) - 1;
    if (nd < 0 || maxOrder < 0 || maxOrder > nd)
        throw std::invalid_argument("fd_weights: need maxOrder < node count");

    std::vector<std::vector<double>> w(maxOrder + 1, std::vector<double>(nd + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    w[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        const int mn = std::min(i, maxOrder);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    w[k][i] = c1 * (k * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                w[k][j] = (c4 * w[k][j] - k * w[k - 1][j]) / c3;
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    return w;
}

namespace {

// Window [lo, lo+points) centered on i, clipped to the array.
std::pair<std::size_t, std::size_t> window(std::size_t size, std::size_t i, int points) {
    const std::size_t half = static_cast<std::size_t>(points) / 2;
    std::size_t lo = (i > half) ? i - half : 0;
    if (lo + points > size) lo = size - points;
    return {lo, lo + points};
}

}  // namespace

double fd_derivative(std::span<const double> x, std::span<const double> f, std::size_t i, int m,
                     int points) {
    if (x.size() != f.size()) throw std::invalid_argument("fd_derivative: size mismatch");
    if (points <= m) throw std::invalid_argument("fd_derivative: need points > order");
    if (x.size() < static_cast<std::size_t>(points))
        throw std::invalid_argument("fd_derivative: too few samples");
    auto [lo, hi] = window(x.size(), i, points);
    const auto w = fd_weights(x[i], x.subspan(lo, hi - lo), m);
    double d = 0.0;
    for (std::size_t j = lo; j < hi; ++j) d += w[m][j - lo] * f[j];
    return d;
}

double fd_radial_laplacian(std::span<const double> r, std::span<const double> u, std::size_t i,
                           int n, int points) {
    if (i == 0 || r[i] <= 0.0)
        throw std::invalid_argument("fd_radial_laplacian: needs r > 0");
    auto [lo, hi] = window(r.size(), i, points);
    const auto w = fd_weights(r[i], r.subspan(lo, hi - lo), 2);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
        d1 += w[1][j - lo] * u[j];
        d2 += w[2][j - lo] * u[j];
    }
    return d2 + (n - 1.0) * d1 / r[i];
}

std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size()) throw std::invalid_argument("cumulative_integral: size mismatch");
    const std::size_t m = x.size();
    std::vector<double> out(m, 0.0);
    if (m < 2) return out;
    if (m < 4) {
        for (std::size_t i = 1; i < m; ++i)
            out[i] = out[i - 1] + 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
        return out;
    }
    // Integrate the local cubic through a 4-node window over each interval.
    for (std::size_t i = 1; i < m; ++i) {
        std::size_t lo = (i >= 2) ? i - 2 : 0;
        if (lo + 4 > m) lo = m - 4;
        const double a = x[i - 1], b = x[i];
        // Two-point Gauss-Legendre on the cubic interpolant is exact.
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        const double g = half / std::sqrt(3.0);
        double val = 0.0;
        for (const double z : {mid - g, mid + g}) {
            const auto w = fd_weights(z, x.subspan(lo, 4), 0);
            double fz = 0.0;
            for (int j = 0; j < 4; ++j) fz += w[0][j] * f[lo + j];
            val += fz;
        }
        out[i] = out[i - 1] + val * half;
    }
    return out;
}

}  // namespace bilem
