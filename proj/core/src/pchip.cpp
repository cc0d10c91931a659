#include "bilem/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bilem {

PchipInterpolant::PchipInterpolant(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    const std::size_t m = x_.size();
    if (m != y_.size() || m < 2) throw std::invalid_argument("PchipInterpolant: need >= 2 nodes");
    for (std::size_t i = 1; i < m; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("PchipInterpolant: nodes must be strictly increasing");

    std::vector<double> h(m - 1), delta(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    d_.assign(m, 0.0);
    if (m == 2) {
        d_[0] = d_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided ends with the standard monotonicity clamp.
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0)
            d = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0))
            d = 3.0 * d0;
        return d;
    };
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[m - 1] = end_slope(h[m - 2], h[m - 3], delta[m - 2], delta[m - 3]);
}

std::size_t PchipInterpolant::interval(double z) const {
    if (empty()) throw std::logic_error("PchipInterpolant: empty");
    if (z < x_.front() || z > x_.back())
        throw std::out_of_range("PchipInterpolant: query outside node range");
    auto it = std::upper_bound(x_.begin(), x_.end(), z);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
}

double PchipInterpolant::operator()(double z) const {
    const std::size_t i = interval(z);
    const double h = x_[i + 1] - x_[i];
    const double t = (z - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double PchipInterpolant::derivative(double z) const {
    const std::size_t i = interval(z);
    const double h = x_[i + 1] - x_[i];
    const double t = (z - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6 * t2 - 6 * t) / h, dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = (-6 * t2 + 6 * t) / h, dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

}  // namespace bilem
