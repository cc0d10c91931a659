#include "bilem/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bilem/exponents.hpp"
#include "bilem/stencils.hpp"

namespace bilem {

void IntegrationConfig::validate() const {
    if (!(originStart > 0.0) || originStart > 1e-2)
        throw std::invalid_argument("IntegrationConfig: originStart must lie in (0, 1e-2]");
    if (!(relTol > 0.0) || !(absTol > 0.0))
        throw std::invalid_argument("IntegrationConfig: tolerances must be positive");
    if (!(rMax > originStart)) throw std::invalid_argument("IntegrationConfig: rMax too small");
}

double IntegrationConfig::blowup_level(double a) const {
    if (blowupThreshold > 0.0) return blowupThreshold;
    return 1e6 * std::max(std::abs(a), 1e-6);
}

namespace {

double source_of(const ProblemParams& params, SourceKind kind, double u, double navierLambda) {
    RadialField f;
    f.params = params;
    f.kind = kind;
    f.navierLambda = navierLambda;
    return f.source(u);
}

double base_of(const ProblemParams& params, SourceKind kind, double u, double navierLambda) {
    RadialField f;
    f.params = params;
    f.kind = kind;
    f.navierLambda = navierLambda;
    return f.potential_base(u);
}

}  // namespace

IntegrationResult integrate(const ProblemParams& params, double a, double b,
                            const IntegrationConfig& cfg, SourceKind kind) {
    params.validate();
    cfg.validate();
    if (kind == SourceKind::Navier)
        throw std::invalid_argument("integrate: Navier problems use the boundary-value solver");
    if (kind == SourceKind::NegativePower && !(a > 0.0))
        throw std::domain_error("integrate: negative-exponent source needs u(0) > 0");

    const int n = params.n;
    const double fa = source_of(params, kind, a, 0.0);
    const double r0 = cfg.originStart;

    // Second-order Taylor start; the r^4 term of u costs nothing and
    // keeps the handoff error at O(r0^4) overall.
    std::vector<double> y0(6);
    y0[0] = a + b * r0 * r0 / (2.0 * n) + fa * std::pow(r0, 4) / (8.0 * n * (n + 2.0));
    y0[1] = b * r0 / n + fa * std::pow(r0, 3) / (2.0 * n * (n + 2.0));
    y0[2] = b + fa * r0 * r0 / (2.0 * n);
    y0[3] = fa * r0 / n;
    y0[4] = 0.0;
    y0[5] = 0.0;

    // The -u^{-p} source is singular at u = 0: trial stages there poison
    // the step with an infinity, the controller rejects it, and the
    // crossing event below stops integration at a small positive floor.
    const bool negative = kind == SourceKind::NegativePower;
    const double uFloor = negative ? 1e-10 * std::max(std::abs(a), 1.0) : 0.0;
    OdeRhs rhs = [params, kind, n, negative](double r, std::span<const double> y,
                                             std::span<double> dy) {
        const double u = y[0], du = y[1], v = y[2], dv = y[3];
        const bool singular = negative && !(u > 0.0);
        dy[0] = du;
        dy[1] = v - (n - 1.0) * du / r;
        dy[2] = dv;
        dy[3] = (singular ? -std::numeric_limits<double>::infinity()
                          : source_of(params, kind, u, 0.0)) -
                (n - 1.0) * dv / r;
        const double rn = std::pow(r, n - 1.0);
        dy[4] = v * v * rn;
        dy[5] = (singular ? std::numeric_limits<double>::infinity()
                          : base_of(params, kind, u, 0.0)) *
                rn;
    };

    const double blowLevel = cfg.blowup_level(a);
    std::vector<OdeEvent> events;
    // event 0: u crossing zero (or the positive floor);  event 1: |u|
    // reaching the blow-up level
    events.push_back(OdeEvent{
        [uFloor](double, std::span<const double> y) { return y[0] - uFloor; }, 0});
    events.push_back(OdeEvent{[blowLevel](double, std::span<const double> y) {
                                  return y[0] * y[0] - blowLevel * blowLevel;
                              },
                              +1});

    OdeOptions opt;
    opt.rtol = cfg.relTol;
    opt.atol = cfg.absTol;
    opt.hMax = cfg.hMax > 0.0 ? cfg.hMax : cfg.rMax / 64.0;

    const bool zeroData = (a == 0.0 && b == 0.0);
    OdeSolution sol = integrate_dopri5(rhs, r0, y0, cfg.rMax, opt,
                                       zeroData ? std::span<const OdeEvent>{} : events);

    IntegrationResult res;
    res.field.params = params;
    res.field.kind = kind;
    res.field.smoothOrigin = true;
    res.field.rTrust = 2.0 * cfg.originStart;
    res.field.quadRelTol = cfg.relTol;
    res.field.quadAbsTol = cfg.absTol;

    const std::size_t m = sol.rGrid.size();
    res.field.r = sol.rGrid;
    res.field.u.resize(m);
    res.field.du.resize(m);
    res.field.v.resize(m);
    res.field.dv.resize(m);
    res.field.intA.resize(m);
    res.field.intB.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        res.field.u[i] = sol.yGrid[i][0];
        res.field.du[i] = sol.yGrid[i][1];
        res.field.v[i] = sol.yGrid[i][2];
        res.field.dv[i] = sol.yGrid[i][3];
        res.field.intA[i] = sol.yGrid[i][4];
        res.field.intB[i] = sol.yGrid[i][5];
    }
    if (!sol.dense.empty())
        res.field.sampler =
            std::make_shared<OdeFieldSampler>(std::make_shared<Dopri5Dense>(std::move(sol.dense)));

    switch (sol.status) {
        case OdeStatus::ReachedEnd:
            res.event = EventKind::None;
            break;
        case OdeStatus::Event:
            res.event = (sol.eventIndex == 0) ? EventKind::Crossing : EventKind::Blowup;
            res.eventRadius = sol.rEnd;
            break;
        case OdeStatus::NonFinite:
            // overflow on the growing side; classify with the blow-up branch
            res.event = EventKind::Blowup;
            res.eventRadius = sol.rEnd;
            break;
        default:
            res.event = EventKind::Failure;
            res.eventRadius = sol.rEnd;
            break;
    }
    if (res.event == EventKind::Failure)
        throw std::runtime_error("integrate: step-size underflow or step budget exhausted");
    return res;
}

RadialField singular_field(const ProblemParams& params, std::span<const double> grid) {
    params.validate();
    if (!is_supercritical(params))
        throw std::domain_error("singular_field: requires n >= 5 and p > (n+4)/(n-4)");
    const DerivedConstants c = derive_constants(params);
    if (!(c.K0 > 0.0)) throw std::domain_error("singular_field: K0 must be positive");
    if (grid.empty() || !(grid.front() > 0.0))
        throw std::invalid_argument("singular_field: grid must exclude 0");

    const double amplitude = std::pow(c.K0, 1.0 / (params.p - 1.0));
    RadialField field;
    field.params = params;
    field.kind = SourceKind::Power;
    field.smoothOrigin = false;
    field.rTrust = 0.0;
    field.sampler = std::make_shared<HomogeneousSampler>(params, SourceKind::Power, amplitude,
                                                         -params.gamma());
    populate_from_sampler(field, grid);
    return field;
}

RadialField negative_homogeneous_field(const ProblemParams& params, std::span<const double> grid) {
    params.validate();
    if (!negative_exponent_condition(params.n, params.p))
        throw std::domain_error("negative_homogeneous_field: admissibility condition fails");
    const double m = 4.0 / (params.p + 1.0);
    const double k = m * (m + params.n - 2.0) * (2.0 - m) * (m + params.n - 4.0);
    if (!(k > 0.0))
        throw std::domain_error("negative_homogeneous_field: balancing constant undefined");
    const double amplitude = std::pow(k, -1.0 / (params.p + 1.0));

    RadialField field;
    field.params = params;
    field.kind = SourceKind::NegativePower;
    field.smoothOrigin = false;  // u(0) = 0 so the source u^{-p} is singular there
    field.rTrust = 0.0;
    field.sampler =
        std::make_shared<HomogeneousSampler>(params, SourceKind::NegativePower, amplitude, m);
    populate_from_sampler(field, grid);
    return field;
}

namespace {

EventKind classify(const IntegrationResult& run) {
    if (run.event == EventKind::Crossing || run.event == EventKind::Blowup) return run.event;
    // No event by rMax: v > 0 cannot decay (v is increasing while u > 0),
    // so a positive final v sits on the blow-up side of the separatrix.
    return run.field.v.back() >= 0.0 ? EventKind::Blowup : EventKind::Crossing;
}

}  // namespace

ShootingResult shoot_entire(const ProblemParams& params, double a, const ShootingConfig& cfg) {
    params.validate();
    if (!(a > 0.0)) throw std::domain_error("shoot_entire: requires a > 0");
    if (!is_supercritical(params))
        throw std::domain_error("shoot_entire: requires n >= 5 and p > (n+4)/(n-4)");

    auto run = [&](double b) { return integrate(params, a, b, cfg.integration); };

    // v(0) = 0 puts the trajectory on the growing side; march the lower
    // endpoint out until the crossing class appears.
    double bHi = 0.0;
    if (classify(run(bHi)) != EventKind::Blowup)
        throw std::runtime_error("shoot_entire: bracket endpoint b = 0 did not blow up");
    double bLo = -2.0 * std::pow(a, 0.5 * (params.p + 1.0));
    int growth = 0;
    while (classify(run(bLo)) != EventKind::Crossing) {
        bLo *= 2.0;
        if (++growth > cfg.maxBracketGrowth)
            throw std::runtime_error("shoot_entire: no crossing endpoint found");
    }

    for (int it = 0; it < cfg.maxBisections; ++it) {
        if (bHi - bLo <= cfg.bracketRelTol * std::abs(bLo)) break;
        const double mid = 0.5 * (bLo + bHi);
        if (classify(run(mid)) == EventKind::Crossing)
            bLo = mid;
        else
            bHi = mid;
    }

    ShootingResult out;
    out.a = a;
    out.bStar = 0.5 * (bLo + bHi);
    out.bracket = {bLo, bHi};
    IntegrationResult fin = run(out.bStar);
    out.finalEvent = fin.event;
    out.field = std::move(fin.field);

    const double rEnd = out.field.r.back();
    auto [amp, slope] = fit_power_law(out.field.r, out.field.u, rEnd / 10.0, rEnd);
    out.decayExponent = slope;
    out.tailAmplitude = amp;
    return out;
}

ResidualReport residual_report(const RadialField& field, int points) {
    field.validate();
    const std::size_t m = field.size();
    if (m < 5) throw std::invalid_argument("residual_report: need at least 5 grid points");
    points = std::min<int>(points, static_cast<int>(m));

    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        scale = std::max(scale, std::abs(field.v[i]));
        scale = std::max(scale, std::abs(field.source(field.u[i])));
    }

    // A centered difference can only certify a residual down to its own
    // roundoff resolution sum_j |w_j| |f_j| eps; report net of that floor
    // so that strongly graded step clusters do not read as defects.
    const double eps = std::numeric_limits<double>::epsilon();
    const int n = field.params.n;
    const std::size_t half = static_cast<std::size_t>(points) / 2;

    auto netResidual = [&](std::span<const double> w1, std::span<const double> w2,
                           std::span<const double> f, std::size_t lo, std::size_t i,
                           double target) {
        double lap = 0.0, noise = 0.0;
        const double invR = (n - 1.0) / field.r[i];
        for (std::size_t j = 0; j < w1.size(); ++j) {
            const double c = w2[j] + invR * w1[j];
            lap += c * f[lo + j];
            noise += std::abs(c) * std::abs(f[lo + j]);
        }
        return std::max(0.0, std::abs(lap - target) - 4.0 * eps * noise);
    };

    ResidualReport rep;
    for (std::size_t i = half; i + half < m; ++i) {
        std::size_t lo = i - half;
        if (lo + points > m) lo = m - points;
        const auto w = fd_weights(field.r[i], std::span<const double>(field.r).subspan(lo, points),
                                  2);
        const double r1 = netResidual(w[1], w[2], field.u, lo, i, field.v[i]);
        const double r2 = netResidual(w[1], w[2], field.v, lo, i, field.source(field.u[i]));
        rep.maxAbs = std::max({rep.maxAbs, r1, r2});
    }
    rep.relative = rep.maxAbs / scale;
    return rep;
}

double residual(const RadialField& field, int points) {
    return residual_report(field, points).maxAbs;
}

double stability_form(const RadialField& field, const TestProfile& profile) {
    field.validate();
    const std::size_t m = profile.r.size();
    if (m < 9 || profile.phi.size() != m)
        throw std::invalid_argument("stability_form: malformed test profile");
    if (profile.phi.front() != 0.0 || profile.phi.back() != 0.0)
        throw std::invalid_argument("stability_form: profile must vanish at its support ends");
    if (!field.sampler || profile.r.front() < field.r.front() ||
        profile.r.back() > field.r.back())
        throw std::invalid_argument("stability_form: profile support leaves the field grid");

    const ProblemParams& q = field.params;
    const double omega = unit_sphere_area(q.n);

    std::vector<double> integrand(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = profile.r[i];
        double lapPhi = 0.0;
        if (i > 0 && i + 1 < m)
            lapPhi = fd_radial_laplacian(profile.r, profile.phi, i, q.n, 7);
        const double uVal = field.at(r).u;
        const double w = std::pow(r, q.n - 1.0);
        integrand[i] = (lapPhi * lapPhi -
                        q.p * std::pow(std::abs(uVal), q.p - 1.0) * profile.phi[i] *
                            profile.phi[i]) *
                       w;
    }
    const std::vector<double> cum = cumulative_integral(profile.r, integrand);
    return omega * cum.back();
}

TestProfile hardy_rellich_profile(int n, double eps, std::size_t gridSize) {
    if (n < 5) throw std::domain_error("hardy_rellich_profile: needs n >= 5");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("hardy_rellich_profile: eps in (0, 0.5)");

    auto smoothstep = [](double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    };

    const double lo = 0.5 * eps, hi = 2.0 / eps;
    const double l2 = std::log(2.0);
    TestProfile prof;
    prof.r.resize(gridSize);
    prof.phi.resize(gridSize);
    const double la = std::log(lo), lb = std::log(hi);
    for (std::size_t i = 0; i < gridSize; ++i) {
        const double t = static_cast<double>(i) / (gridSize - 1);
        const double r = std::exp(la + t * (lb - la));
        const double rise = smoothstep((std::log(r) - la) / l2);
        const double fall = smoothstep((lb - std::log(r)) / l2);
        prof.r[i] = r;
        prof.phi[i] = std::pow(r, -0.5 * (n - 4.0)) * rise * fall;
    }
    prof.phi.front() = 0.0;
    prof.phi.back() = 0.0;
    return prof;
}

TestProfile log_bump_profile(double center, double width, std::size_t gridSize) {
    if (!(center > 0.0) || !(width > 0.0))
        throw std::invalid_argument("log_bump_profile: center and width must be positive");
    TestProfile prof;
    prof.r.resize(gridSize);
    prof.phi.resize(gridSize);
    for (std::size_t i = 0; i < gridSize; ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) / (gridSize - 1);
        prof.r[i] = center * std::exp(t * width);
        const double s = 1.0 - t * t;
        prof.phi[i] = (s > 1e-12) ? std::exp(1.0 - 1.0 / s) : 0.0;
    }
    prof.phi.front() = 0.0;
    prof.phi.back() = 0.0;
    return prof;
}

std::pair<double, double> fit_power_law(std::span<const double> x, std::span<const double> y,
                                        double xLo, double xHi) {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < xLo || x[i] > xHi) continue;
        if (!(std::abs(y[i]) > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sw += 1.0;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    if (sw < 2.0) throw std::invalid_argument("fit_power_law: too few samples in window");
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw std::invalid_argument("fit_power_law: degenerate window");
    const double slope = (sw * sxy - sx * sy) / det;
    const double inter = (sy * sxx - sx * sxy) / det;
    return {std::exp(inter), slope};
}

}  // namespace bilem
