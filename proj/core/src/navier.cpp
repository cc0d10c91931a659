#include "bilem/navier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bilem/band.hpp"
#include "bilem/exponents.hpp"
#include "bilem/stencils.hpp"

namespace bilem {

// ---------------------------------------------------------------- band LU

BandMatrix::BandMatrix(int dim, int kl, int ku)
    : n_(dim), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ld_) * dim, 0.0),
      piv_(dim, 0) {
    if (dim <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("BandMatrix: bad shape");
}

double& BandMatrix::at(int i, int j) {
    const int ri = kl_ + ku_ + i - j;
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || ri < 0 || ri >= ld_)
        throw std::out_of_range("BandMatrix: entry outside band");
    return ab_[static_cast<std::size_t>(j) * ld_ + ri];
}

double BandMatrix::get(int i, int j) const {
    const int ri = kl_ + ku_ + i - j;
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || ri < 0 || ri >= ld_) return 0.0;
    return ab_[static_cast<std::size_t>(j) * ld_ + ri];
}

void BandMatrix::factor() {
    const int kv = kl_ + ku_;  // rows of U above the diagonal after fill
    for (int j = 0; j < n_; ++j) {
        const int km = std::min(kl_, n_ - 1 - j);
        int jp = 0;
        double amax = std::abs(at(j, j));
        for (int k = 1; k <= km; ++k) {
            const double a = std::abs(at(j + k, j));
            if (a > amax) {
                amax = a;
                jp = k;
            }
        }
        piv_[j] = j + jp;
        if (amax == 0.0) at(j, j) = 1e-300;  // keep solves finite
        if (jp != 0) {
            const int jmax = std::min(j + kv, n_ - 1);
            for (int c = j; c <= jmax; ++c) std::swap(at(j, c), at(j + jp, c));
        }
        const double pivot = at(j, j);
        const int jmax = std::min(j + kv, n_ - 1);
        for (int k = 1; k <= km; ++k) {
            const double m = at(j + k, j) / pivot;
            at(j + k, j) = m;
            for (int c = j + 1; c <= jmax; ++c) at(j + k, c) -= m * at(j, c);
        }
    }
    factored_ = true;
}

void BandMatrix::solve(std::span<double> b) const {
    if (!factored_) throw std::logic_error("BandMatrix: factor() first");
    if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("BandMatrix: rhs size");
    auto& self = const_cast<BandMatrix&>(*this);
    const int kv = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
        if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
        const int km = std::min(kl_, n_ - 1 - j);
        for (int k = 1; k <= km; ++k) b[j + k] -= self.at(j + k, j) * b[j];
    }
    for (int j = n_ - 1; j >= 0; --j) {
        b[j] /= self.at(j, j);
        const int imin = std::max(0, j - kv);
        for (int i = imin; i < j; ++i) b[i] -= self.at(i, j) * b[j];
    }
}

// ------------------------------------------------------ discrete operators

namespace {

// Second-order radial Laplacian stencil on the uniform grid r_i = i h,
// with ghost-point symmetry at the origin and w_N = 0 at r = 1.
// Unknowns live at i = 0..N-1.
struct LaplacianStencil {
    int N;
    int n;
    double h;

    double sub(int i) const { return (1.0 - 0.5 * (n - 1.0) / i) / (h * h); }  // i >= 1
    double diag(int i) const {
        if (i == 0) return -2.0 * n / (h * h);
        return -2.0 / (h * h);
    }
    double sup(int i) const {
        if (i == 0) return 2.0 * n / (h * h);
        return (1.0 + 0.5 * (n - 1.0) / i) / (h * h);
    }

    double apply(std::span<const double> w, int i) const {
        double s = diag(i) * w[i];
        if (i >= 1) s += sub(i) * w[i - 1];
        if (i + 1 < N) s += sup(i) * w[i + 1];  // w_N = 0 otherwise
        return s;
    }
};

struct DiscreteProblem {
    ProblemParams params;
    LaplacianStencil lap;

    int dim() const { return 2 * lap.N; }

    // Residual of [Lap u - v; Lap v - lambda (1+u)^p] in interleaved order.
    void residual(std::span<const double> x, double lambda, std::span<double> F) const {
        const int N = lap.N;
        std::vector<double> u(N), v(N);
        split(x, u, v);
        for (int i = 0; i < N; ++i) {
            F[2 * i] = lap.apply(u, i) - v[i];
            F[2 * i + 1] = lap.apply(v, i) - lambda * std::pow(1.0 + u[i], params.p);
        }
    }

    void jacobian(std::span<const double> x, double lambda, BandMatrix& J) const {
        const int N = lap.N;
        for (int i = 0; i < N; ++i) {
            const int ru = 2 * i, rv = 2 * i + 1;
            J.set(ru, 2 * i, lap.diag(i));
            J.set(ru, 2 * i + 1, -1.0);
            if (i >= 1) J.set(ru, 2 * (i - 1), lap.sub(i));
            if (i + 1 < N) J.set(ru, 2 * (i + 1), lap.sup(i));
            J.set(rv, 2 * i + 1, lap.diag(i));
            J.set(rv, 2 * i,
                  -lambda * params.p * std::pow(1.0 + x[2 * i], params.p - 1.0));
            if (i >= 1) J.set(rv, 2 * (i - 1) + 1, lap.sub(i));
            if (i + 1 < N) J.set(rv, 2 * (i + 1) + 1, lap.sup(i));
        }
    }

    // dF/dlambda: nonzero only on the v-rows.
    void dlambda(std::span<const double> x, std::span<double> out) const {
        const int N = lap.N;
        for (int i = 0; i < N; ++i) {
            out[2 * i] = 0.0;
            out[2 * i + 1] = -std::pow(1.0 + x[2 * i], params.p);
        }
    }

    static void split(std::span<const double> x, std::span<double> u, std::span<double> v) {
        const std::size_t N = u.size();
        for (std::size_t i = 0; i < N; ++i) {
            u[i] = x[2 * i];
            v[i] = x[2 * i + 1];
        }
    }

    double min_one_plus_u(std::span<const double> x) const {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < lap.N; ++i) m = std::min(m, 1.0 + x[2 * i]);
        return m;
    }
};

double inf_norm(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

// Newton iteration at fixed lambda.  Throws on divergence.
void newton_fixed(const DiscreteProblem& dp, double lambda, std::vector<double>& x,
                  const NavierConfig& cfg) {
    const int dim = dp.dim();
    std::vector<double> F(dim), step(dim), trial(dim), Ft(dim);
    const double floorTol = 1e3 * std::numeric_limits<double>::epsilon() / (dp.lap.h * dp.lap.h);
    const double tol = std::max(cfg.newtonTol * std::max(1.0, lambda), floorTol);

    dp.residual(x, lambda, F);
    double fn = inf_norm(F);
    for (int it = 0; it < cfg.maxNewtonIter; ++it) {
        if (fn <= tol) return;
        BandMatrix J(dim, 2, 2);
        dp.jacobian(x, lambda, J);
        J.factor();
        for (int i = 0; i < dim; ++i) step[i] = -F[i];
        J.solve(step);

        double t = 1.0;
        for (int back = 0; back < 40; ++back) {
            for (int i = 0; i < dim; ++i) trial[i] = x[i] + t * step[i];
            if (dp.min_one_plus_u(trial) > 1e-9) {
                dp.residual(trial, lambda, Ft);
                const double fnt = inf_norm(Ft);
                if (fnt < fn * (1.0 - 0.25 * t) || fnt <= tol) {
                    x.swap(trial);
                    F.swap(Ft);
                    fn = fnt;
                    t = -1.0;
                    break;
                }
            }
            t *= 0.5;
        }
        if (t > 0.0) throw std::runtime_error("navier: Newton line search stalled");
    }
    dp.residual(x, lambda, F);
    if (inf_norm(F) > tol) throw std::runtime_error("navier: Newton did not converge");
}

// Smallest eigenvalue of  Lap_h^2 - diag(lambda p (1+u)^{p-1})  with the
// Navier closure, by shift-and-invert iteration with Rayleigh updates.
double smallest_eigenvalue(const DiscreteProblem& dp, std::span<const double> x, double lambda,
                           double shiftGuess) {
    const int N = dp.lap.N;
    const LaplacianStencil& L = dp.lap;

    std::vector<double> d(N);
    for (int i = 0; i < N; ++i)
        d[i] = lambda * dp.params.p * std::pow(1.0 + x[2 * i], dp.params.p - 1.0);

    auto applyOp = [&](std::span<const double> phi, std::span<double> out) {
        std::vector<double> psi(N);
        for (int i = 0; i < N; ++i) psi[i] = L.apply(phi, i);
        for (int i = 0; i < N; ++i) out[i] = L.apply(psi, i) - d[i] * phi[i];
    };

    auto buildShifted = [&](double sigma) {
        BandMatrix M(N, 2, 2);
        for (int i = 0; i < N; ++i) {
            const double bi_sub = (i >= 1) ? L.sub(i) : 0.0;
            const double bi_sup = (i + 1 < N) ? L.sup(i) : 0.0;
            if (i >= 2) M.set(i, i - 2, bi_sub * L.sub(i - 1));
            if (i >= 1) M.set(i, i - 1, bi_sub * L.diag(i - 1) + L.diag(i) * bi_sub);
            double diag = L.diag(i) * L.diag(i) - d[i] - sigma;
            if (i >= 1) diag += bi_sub * L.sup(i - 1);
            if (i + 1 < N) diag += bi_sup * L.sub(i + 1);
            M.set(i, i, diag);
            if (i + 1 < N) M.set(i, i + 1, L.diag(i) * bi_sup + bi_sup * L.diag(i + 1));
            if (i + 2 < N) M.set(i, i + 2, bi_sup * L.sup(i + 1));
        }
        M.factor();
        return M;
    };

    std::vector<double> phi(N), Lphi(N);
    for (int i = 0; i < N; ++i) {
        const double r = L.h * i;
        phi[i] = 1.0 - r * r;
    }

    double sigma = shiftGuess;
    BandMatrix M = buildShifted(sigma);
    double rho = sigma, rhoPrev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        M.solve(phi);
        double norm = 0.0;
        for (double v : phi) norm = std::max(norm, std::abs(v));
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("navier: eigenvalue iteration broke down");
        for (double& v : phi) v /= norm;

        applyOp(phi, Lphi);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < N; ++i) {
            num += phi[i] * Lphi[i];
            den += phi[i] * phi[i];
        }
        rho = num / den;
        if (std::abs(rho - rhoPrev) <= 1e-11 * std::max(1.0, std::abs(rho))) break;
        rhoPrev = rho;
        if (it % 6 == 5) {
            sigma = rho;
            M = buildShifted(sigma);
        }
    }
    return rho;
}

// Weighted tangent-space inner product: RMS over state, unit weight on
// the parameter.
double dot_w(std::span<const double> a, std::span<const double> b, double al, double bl) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s / static_cast<double>(a.size()) + al * bl;
}

RadialField make_field(const DiscreteProblem& dp, std::span<const double> x, double lambda) {
    const int N = dp.lap.N;
    const double h = dp.lap.h;
    const int n = dp.params.n;

    // Full node set including r = 0 and r = 1 for differentiation...
    std::vector<double> rAll(N + 1), uAll(N + 1), vAll(N + 1);
    for (int i = 0; i <= N; ++i) rAll[i] = h * i;
    for (int i = 0; i < N; ++i) {
        uAll[i] = x[2 * i];
        vAll[i] = x[2 * i + 1];
    }
    uAll[N] = 0.0;
    vAll[N] = 0.0;

    RadialField f;
    f.params = dp.params;
    f.kind = SourceKind::Navier;
    f.navierLambda = lambda;
    f.smoothOrigin = true;
    f.rTrust = 0.0;
    f.quadRelTol = h * h;  // discretization accuracy dominates
    f.quadAbsTol = 1e-14;

    // ...then store the field on the positive nodes only.
    f.r.assign(rAll.begin() + 1, rAll.end());
    f.u.assign(uAll.begin() + 1, uAll.end());
    f.v.assign(vAll.begin() + 1, vAll.end());
    f.du.resize(N);
    f.dv.resize(N);
    for (int i = 1; i <= N; ++i) {
        f.du[i - 1] = fd_derivative(rAll, uAll, i, 1, 5);
        f.dv[i - 1] = fd_derivative(rAll, vAll, i, 1, 5);
    }

    std::vector<double> gA(N), gB(N);
    for (int i = 1; i <= N; ++i) {
        const double w = std::pow(rAll[i], n - 1.0);
        gA[i - 1] = vAll[i] * vAll[i] * w;
        gB[i - 1] = std::pow(1.0 + uAll[i], dp.params.p + 1.0) * w;
    }
    f.intA = cumulative_integral(f.r, gA);
    f.intB = cumulative_integral(f.r, gB);
    // leading contribution of the first cell [0, h]
    const double c0A = vAll[0] * vAll[0] * std::pow(h, n) / n;
    const double c0B = std::pow(1.0 + uAll[0], dp.params.p + 1.0) * std::pow(h, n) / n;
    for (int i = 0; i < N; ++i) {
        f.intA[i] += c0A;
        f.intB[i] += c0B;
    }

    f.sampler = std::make_shared<PchipFieldSampler>(f);
    return f;
}

BranchPoint make_point(const DiscreteProblem& dp, std::vector<double> x, double lambda,
                       double eig, double arclength) {
    BranchPoint pt;
    pt.lambda = lambda;
    pt.supNorm = x[0];
    pt.eigMin = eig;
    pt.arclength = arclength;
    pt.state = std::move(x);
    pt.field = make_field(dp, pt.state, lambda);
    return pt;
}

}  // namespace

// ------------------------------------------------------------- public API

BranchPoint solve_at(const ProblemParams& params, double lambda,
                     std::span<const double> initialGuess, const NavierConfig& cfg) {
    params.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_at: lambda must be positive");
    if (cfg.gridSize < 8) throw std::invalid_argument("solve_at: grid too coarse");

    DiscreteProblem dp{params, {cfg.gridSize, params.n, 1.0 / cfg.gridSize}};
    std::vector<double> x(dp.dim(), 0.0);
    if (!initialGuess.empty()) {
        if (initialGuess.size() != static_cast<std::size_t>(dp.dim()))
            throw std::invalid_argument("solve_at: guess size mismatch");
        x.assign(initialGuess.begin(), initialGuess.end());
    }
    newton_fixed(dp, lambda, x, cfg);
    const double eig = smallest_eigenvalue(dp, x, lambda, 0.0);
    return make_point(dp, std::move(x), lambda, eig, 0.0);
}

Branch trace_branch(const ProblemParams& params, const BranchConfig& cfg) {
    params.validate();
    const NavierConfig& ncfg = cfg.solver;
    DiscreteProblem dp{params, {ncfg.gridSize, params.n, 1.0 / ncfg.gridSize}};
    const int dim = dp.dim();

    // lambda with supNorm ~ 0.01 from the linear response u ~ lambda w,
    // w(0) = 1/(4n^2) - 1/(8n(n+2)).
    const double n = params.n;
    const double w0 = 1.0 / (4.0 * n * n) - 1.0 / (8.0 * n * (n + 2.0));
    double lambda = (cfg.lambda0 > 0.0) ? cfg.lambda0 : 0.01 / w0;

    Branch branch;
    std::vector<double> x(dim, 0.0);
    newton_fixed(dp, lambda, x, ncfg);
    double eig = smallest_eigenvalue(dp, x, lambda, 0.0);
    branch.points.push_back(make_point(dp, x, lambda, eig, 0.0));

    // Initial tangent from the parameterized solve J du = -F_lambda.
    std::vector<double> tU(dim), rhs(dim);
    double tL;
    {
        BandMatrix J(dim, 2, 2);
        dp.jacobian(x, lambda, J);
        J.factor();
        dp.dlambda(x, rhs);
        for (double& v : rhs) v = -v;
        J.solve(rhs);
        tU = rhs;
        tL = 1.0;
        const double nrm = std::sqrt(dot_w(tU, tU, tL, tL));
        for (double& v : tU) v /= nrm;
        tL /= nrm;
    }

    double ds = (cfg.ds0 > 0.0) ? cfg.ds0 : 0.2 * lambda;
    const double dsMax = (cfg.dsMax > 0.0) ? cfg.dsMax : 10.0 * ds;
    const double dsMin = 1e-10 * ds;
    double arclength = 0.0;
    double lambdaMax = lambda;
    bool pastFold = false;
    int refineLevel = 0;

    std::vector<double> xPred(dim), F(dim), z1(dim), z2(dim), xNew(dim);

    while (branch.points.size() < cfg.maxPoints && arclength < cfg.maxArclength) {
        const BranchPoint& cur = branch.points.back();

        // predictor
        double lamNew = cur.lambda + ds * tL;
        for (int i = 0; i < dim; ++i) xNew[i] = cur.state[i] + ds * tU[i];
        for (int i = 0; i < dim; ++i) xPred[i] = xNew[i];
        const double lamPred = lamNew;

        // corrector: Newton on [F; <t, X - X_pred>_w] via block elimination
        bool ok = true;
        for (int it = 0;; ++it) {
            dp.residual(xNew, lamNew, F);
            double constraint = tL * (lamNew - lamPred);
            for (int i = 0; i < dim; ++i) constraint += tU[i] * (xNew[i] - xPred[i]) / dim;
            const double fn = std::max(inf_norm(F), std::abs(constraint));
            const double floorTol =
                1e3 * std::numeric_limits<double>::epsilon() / (dp.lap.h * dp.lap.h);
            if (fn <= std::max(ncfg.newtonTol * std::max(1.0, lamNew), floorTol)) break;
            if (it >= ncfg.maxNewtonIter || dp.min_one_plus_u(xNew) <= 1e-9 ||
                !std::isfinite(fn)) {
                ok = false;
                break;
            }
            BandMatrix J(dim, 2, 2);
            dp.jacobian(xNew, lamNew, J);
            J.factor();
            dp.dlambda(xNew, rhs);
            for (int i = 0; i < dim; ++i) z1[i] = F[i];
            J.solve(z1);
            for (int i = 0; i < dim; ++i) z2[i] = rhs[i];
            J.solve(z2);
            double tz1 = 0.0, tz2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                tz1 += tU[i] * z1[i] / dim;
                tz2 += tU[i] * z2[i] / dim;
            }
            const double dLam = (tz1 - constraint) / (tL - tz2);
            for (int i = 0; i < dim; ++i) xNew[i] += -z1[i] - dLam * z2[i];
            lamNew += dLam;
        }

        if (!ok) {
            ds *= 0.4;
            if (ds < dsMin) {
                branch.stalled = true;
                break;
            }
            continue;
        }

        // Refine steps once the fold is first bracketed so the turning
        // point is resolved tightly.
        if (lamNew < cur.lambda && !pastFold && refineLevel < 3 && ds > 8.0 * dsMin) {
            ds *= 0.2;
            ++refineLevel;
            continue;
        }
        if (lamNew < cur.lambda) pastFold = true;

        // accept
        double dist = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = xNew[i] - cur.state[i];
            dist += d * d;
        }
        dist = std::sqrt(dist / dim + (lamNew - cur.lambda) * (lamNew - cur.lambda));
        arclength += dist;

        // secant tangent
        const double invDist = 1.0 / dist;
        for (int i = 0; i < dim; ++i) tU[i] = (xNew[i] - cur.state[i]) * invDist;
        tL = (lamNew - cur.lambda) * invDist;

        eig = smallest_eigenvalue(dp, xNew, lamNew, std::min(eig, 0.9 * eig));
        branch.points.push_back(make_point(dp, xNew, lamNew, eig, arclength));
        lambdaMax = std::max(lambdaMax, lamNew);

        if (branch.points.back().supNorm > cfg.supNormCap) break;
        if (pastFold && lamNew < cfg.postFoldFraction * lambdaMax) break;
        ds = std::min(ds * 1.4, dsMax);
    }

    // Fold location: parabolic refinement of lambda(s) through the three
    // points around the maximum.
    branch.lambdaStar = lambdaMax;
    std::size_t iMax = 0;
    for (std::size_t i = 0; i < branch.points.size(); ++i)
        if (branch.points[i].lambda > branch.points[iMax].lambda) iMax = i;
    if (iMax > 0 && iMax + 1 < branch.points.size()) {
        branch.foldIndex = static_cast<int>(iMax);
        const auto& a = branch.points[iMax - 1];
        const auto& b = branch.points[iMax];
        const auto& c = branch.points[iMax + 1];
        const double s1 = a.arclength - b.arclength, s2 = 0.0, s3 = c.arclength - b.arclength;
        // quadratic through (s_i, lambda_i)
        const double d21 = (b.lambda - a.lambda) / (s2 - s1);
        const double d32 = (c.lambda - b.lambda) / (s3 - s2);
        const double curv = (d32 - d21) / (s3 - s1);
        if (curv < 0.0) {
            const double sv = 0.5 * (s1 + s2 - d21 / curv);
            branch.lambdaStar = b.lambda + d21 * (sv - s1) + curv * (sv - s1) * (sv - s2);
        }
    }
    return branch;
}

ProbeReport extremal_regularity_probe(const ProblemParams& params, const BranchConfig& cfg) {
    BranchConfig fine = cfg;
    fine.solver.gridSize = 2 * cfg.solver.gridSize;

    const Branch coarse = trace_branch(params, cfg);
    const Branch fineBr = trace_branch(params, fine);

    ProbeReport rep;
    rep.nP = min_stable_dimension(params.p);
    rep.belowCritical = params.n < rep.nP;
    rep.lambdaStarCoarse = coarse.lambdaStar;
    rep.lambdaStarFine = fineBr.lambdaStar;
    rep.lambdaStarRelDiff =
        std::abs(coarse.lambdaStar - fineBr.lambdaStar) / std::max(1e-300, fineBr.lambdaStar);

    auto foldSup = [](const Branch& b) {
        return b.foldIndex >= 0 ? b.points[b.foldIndex].supNorm
                                : (b.points.empty() ? 0.0 : b.points.back().supNorm);
    };
    rep.foldSupCoarse = foldSup(coarse);
    rep.foldSupFine = foldSup(fineBr);
    rep.foldSupRelDiff =
        std::abs(rep.foldSupCoarse - rep.foldSupFine) / std::max(1e-300, rep.foldSupFine);
    rep.foldFound = coarse.foldIndex >= 0 && fineBr.foldIndex >= 0;
    rep.bounded = rep.belowCritical && rep.foldFound && rep.foldSupRelDiff <= 0.01;
    return rep;
}

}  // namespace bilem
