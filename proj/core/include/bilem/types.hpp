#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bilem {

/// Parameter pair (n, p) for the biharmonic Lane-Emden problem
/// Delta^2 u = |u|^{p-1} u in dimension n.
struct ProblemParams {
    int n = 5;       ///< space dimension, n >= 1
    double p = 2.0;  ///< nonlinearity exponent, p > 1

    void validate() const {
        if (n < 1) throw std::domain_error("ProblemParams: dimension n must be >= 1");
        if (!(p > 1.0)) throw std::domain_error("ProblemParams: exponent p must be > 1");
        if (!std::isfinite(p)) throw std::domain_error("ProblemParams: exponent p must be finite");
    }

    /// gamma = 4/(p-1), the scaling exponent of the problem.
    double gamma() const { return 4.0 / (p - 1.0); }

    bool operator==(const ProblemParams&) const = default;
};

/// Extended real with a dedicated +infinity sentinel and total order.
/// Avoids relying on floating-point infinities in comparisons and output.
class ExtendedReal {
public:
    ExtendedReal() = default;
    static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    bool is_infinite() const { return infinite_; }

    /// Finite value; throws when called on the infinite sentinel.
    double value() const {
        if (infinite_) throw std::logic_error("ExtendedReal: value() on infinity");
        return value_;
    }

    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
    friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return !(a < b); }
    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend bool operator<(double a, const ExtendedReal& b) { return finite(a) < b; }
    friend bool operator<(const ExtendedReal& a, double b) { return a < finite(b); }
    friend bool operator>(double a, const ExtendedReal& b) { return b < finite(a); }
    friend bool operator>(const ExtendedReal& a, double b) { return finite(b) < a; }
    friend bool operator>=(double a, const ExtendedReal& b) { return finite(a) >= b; }
    friend bool operator<=(double a, const ExtendedReal& b) { return finite(a) <= b; }

    /// "inf" for the sentinel, shortest-exact decimal otherwise.
    std::string str() const;

private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_ = 0.0;
    bool infinite_ = false;
};

}  // namespace bilem
