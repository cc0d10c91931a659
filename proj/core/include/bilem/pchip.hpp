#pragma once

#include <span>
#include <vector>

namespace bilem {

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
/// slopes).  Monotone data stays monotone; evaluation outside the node
/// range is refused.
class PchipInterpolant {
public:
    PchipInterpolant() = default;
    PchipInterpolant(std::span<const double> x, std::span<const double> y);

    double operator()(double z) const;
    double derivative(double z) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::size_t interval(double z) const;
    std::vector<double> x_, y_, d_;
};

}  // namespace bilem
