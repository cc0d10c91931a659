#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bilem {

/// Right-hand side y' = f(r, y).
using OdeRhs = std::function<void(double r, std::span<const double> y, std::span<double> dy)>;

/// Scalar event function; a root of g along the solution stops integration.
struct OdeEvent {
    std::function<double(double r, std::span<const double> y)> g;
    int direction = 0;  ///< +1 rising roots, -1 falling, 0 both
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double hInit = 0.0;  ///< 0 = automatic
    double hMax = 0.0;   ///< 0 = span length
    std::size_t maxSteps = 2000000;
};

enum class OdeStatus { ReachedEnd, Event, StepUnderflow, MaxSteps, NonFinite };

/// Dense output for one accepted Dormand-Prince step (quartic in theta).
struct DenseStep {
    double r0 = 0.0, h = 0.0;
    std::vector<double> c1, c2, c3, c4, c5;
};

/// Piecewise dense interpolant accumulated over accepted steps.
class Dopri5Dense {
public:
    void eval(double r, std::span<double> out) const {
        if (steps_.empty()) throw std::logic_error("Dopri5Dense: empty");
        const DenseStep& s = locate(r);
        const double th = std::clamp((r - s.r0) / s.h, 0.0, 1.0);
        const double th1 = 1.0 - th;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = s.c1[i] +
                     th * (s.c2[i] + th1 * (s.c3[i] + th * (s.c4[i] + th1 * s.c5[i])));
    }

    double r_front() const { return steps_.front().r0; }
    double r_back() const { return steps_.back().r0 + steps_.back().h; }
    bool empty() const { return steps_.empty(); }
    void push(DenseStep s) { steps_.push_back(std::move(s)); }

    /// Drop the tail of the last step beyond rStop (event truncation).
    void truncate(double rStop) {
        while (!steps_.empty() && steps_.back().r0 >= rStop) steps_.pop_back();
        if (!steps_.empty()) {
            DenseStep& s = steps_.back();
            s.h = std::min(s.h, rStop - s.r0);
        }
    }

private:
    const DenseStep& locate(double r) const {
        auto it = std::upper_bound(steps_.begin(), steps_.end(), r,
                                   [](double v, const DenseStep& s) { return v < s.r0; });
        if (it != steps_.begin()) --it;
        return *it;
    }
    std::vector<DenseStep> steps_;
};

struct OdeSolution {
    OdeStatus status = OdeStatus::ReachedEnd;
    int eventIndex = -1;
    double rEnd = 0.0;
    std::vector<double> yEnd;
    std::vector<double> rGrid;                ///< accepted step endpoints, incl. r0
    std::vector<std::vector<double>> yGrid;   ///< state rows aligned with rGrid
    Dopri5Dense dense;
};

/// Adaptive Dormand-Prince 5(4) with fourth-order dense output and event
/// location by bisection on the dense interpolant.
inline OdeSolution integrate_dopri5(const OdeRhs& rhs, double r0, std::span<const double> y0,
                                    double rEnd, const OdeOptions& opt,
                                    std::span<const OdeEvent> events = {}) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const std::size_t dim = y0.size();
    if (!(rEnd > r0)) throw std::invalid_argument("integrate_dopri5: need rEnd > r0");

    OdeSolution sol;
    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), yt(dim),
        y1(dim);

    const double hMax = opt.hMax > 0.0 ? opt.hMax : rEnd - r0;
    double r = r0;
    rhs(r, y, k1);

    double h = opt.hInit;
    if (h <= 0.0) {
        // standard two-stage starting-step estimate
        auto rms = [&](auto&& val) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double sc = opt.atol + opt.rtol * std::abs(y[i]);
                const double e = val(i) / sc;
                s += e * e;
            }
            return std::sqrt(s / dim);
        };
        const double d0 = rms([&](std::size_t i) { return y[i]; });
        const double d1 = rms([&](std::size_t i) { return k1[i]; });
        double h0 = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6 * (rEnd - r0);
        h0 = std::min(h0, hMax);
        for (std::size_t i = 0; i < dim; ++i) yt[i] = y[i] + h0 * k1[i];
        rhs(r + h0, yt, k2);
        const double d2 = rms([&](std::size_t i) { return k2[i] - k1[i]; }) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = (dm > 1e-15) ? std::pow(0.01 / dm, 0.2) : std::max(1e-6, h0 * 1e3);
        h = std::min({100.0 * h0, h1, hMax});
    }

    sol.rGrid.push_back(r);
    sol.yGrid.push_back(y);

    std::vector<double> gPrev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) gPrev[e] = events[e].g(r, y);

    auto finish = [&](OdeStatus st, double rf, std::vector<double> yf) {
        sol.status = st;
        sol.rEnd = rf;
        sol.yEnd = std::move(yf);
        return sol;
    };

    for (std::size_t step = 0; step < opt.maxSteps; ++step) {
        if (r >= rEnd) return finish(OdeStatus::ReachedEnd, r, y);
        bool last = false;
        // stretch slightly instead of leaving a sliver of a final step
        if (r + 1.05 * h >= rEnd) {
            h = rEnd - r;
            last = true;
        }

        auto stage = [&](double c, std::span<double> k, auto&&... terms) {
            for (std::size_t i = 0; i < dim; ++i) yt[i] = y[i] + h * (... + terms(i));
            rhs(r + c * h, yt, k);
        };
        stage(0.2, k2, [&](std::size_t i) { return a21 * k1[i]; });
        stage(0.3, k3, [&](std::size_t i) { return a31 * k1[i]; },
              [&](std::size_t i) { return a32 * k2[i]; });
        stage(0.8, k4, [&](std::size_t i) { return a41 * k1[i]; },
              [&](std::size_t i) { return a42 * k2[i]; },
              [&](std::size_t i) { return a43 * k3[i]; });
        stage(8.0 / 9.0, k5, [&](std::size_t i) { return a51 * k1[i]; },
              [&](std::size_t i) { return a52 * k2[i]; },
              [&](std::size_t i) { return a53 * k3[i]; },
              [&](std::size_t i) { return a54 * k4[i]; });
        stage(1.0, k6, [&](std::size_t i) { return a61 * k1[i]; },
              [&](std::size_t i) { return a62 * k2[i]; },
              [&](std::size_t i) { return a63 * k3[i]; },
              [&](std::size_t i) { return a64 * k4[i]; },
              [&](std::size_t i) { return a65 * k5[i]; });
        for (std::size_t i = 0; i < dim; ++i)
            y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(r + h, y1, k7);

        double errNorm = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < dim; ++i) {
            if (!std::isfinite(y1[i])) finite = false;
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            errNorm += (e / sc) * (e / sc);
        }
        errNorm = std::sqrt(errNorm / dim);

        if (!finite || errNorm > 1.0) {
            if (!finite && h <= 1e-14 * std::max(1.0, std::abs(r)))
                return finish(OdeStatus::NonFinite, r, y);
            const double fac = finite ? std::max(0.2, 0.9 * std::pow(errNorm, -0.2)) : 0.25;
            h *= fac;
            if (h < 1e-14 * std::max(1.0, std::abs(r)))
                return finish(OdeStatus::StepUnderflow, r, y);
            continue;
        }

        DenseStep ds;
        ds.r0 = r;
        ds.h = h;
        ds.c1.resize(dim);
        ds.c2.resize(dim);
        ds.c3.resize(dim);
        ds.c4.resize(dim);
        ds.c5.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double ydiff = y1[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            ds.c1[i] = y[i];
            ds.c2[i] = ydiff;
            ds.c3[i] = bspl;
            ds.c4[i] = ydiff - h * k7[i] - bspl;
            ds.c5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                            d7 * k7[i]);
        }
        sol.dense.push(std::move(ds));

        const double rNew = r + h;

        // Event check across the accepted step.
        int hit = -1;
        double gNew = 0.0;
        for (std::size_t e = 0; e < events.size(); ++e) {
            gNew = events[e].g(rNew, y1);
            const bool crossed = (gPrev[e] < 0.0 && gNew >= 0.0 && events[e].direction >= 0) ||
                                 (gPrev[e] > 0.0 && gNew <= 0.0 && events[e].direction <= 0);
            if (crossed) {
                hit = static_cast<int>(e);
                break;
            }
            gPrev[e] = gNew;
        }
        if (hit >= 0) {
            double lo = r, hiR = rNew;
            std::vector<double> ym(dim);
            double gLo = gPrev[hit];
            for (int it = 0; it < 80 && hiR - lo > 1e-15 * std::max(1.0, hiR); ++it) {
                const double mid = 0.5 * (lo + hiR);
                sol.dense.eval(mid, ym);
                const double gm = events[hit].g(mid, ym);
                if ((gLo < 0.0) == (gm < 0.0)) {
                    lo = mid;
                    gLo = gm;
                } else {
                    hiR = mid;
                }
            }
            sol.dense.eval(hiR, ym);
            sol.dense.truncate(hiR);
            sol.rGrid.push_back(hiR);
            sol.yGrid.push_back(ym);
            sol.eventIndex = hit;
            return finish(OdeStatus::Event, hiR, ym);
        }

        r = rNew;
        y.swap(y1);
        k1.swap(k7);
        sol.rGrid.push_back(r);
        sol.yGrid.push_back(y);
        if (last) return finish(OdeStatus::ReachedEnd, r, y);

        const double fac = std::clamp(0.9 * std::pow(std::max(errNorm, 1e-10), -0.2), 0.2, 5.0);
        h = std::min(h * fac, hMax);
    }
    return finish(OdeStatus::MaxSteps, r, y);
}

}  // namespace bilem
