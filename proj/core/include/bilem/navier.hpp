#pragma once

#include <span>
#include <vector>

#include "bilem/radial_field.hpp"

namespace bilem {

/// Discretization and Newton controls for the radial boundary problem
/// Delta^2 u = lambda (1+u)^p on the unit ball, u = Delta u = 0 at r = 1.
struct NavierConfig {
    int gridSize = 160;       ///< N; uniform grid h = 1/N, unknowns at i = 0..N-1
    double newtonTol = 1e-10; ///< absolute residual target (floored by h^-2 roundoff)
    int maxNewtonIter = 30;
};

/// One converged solution of the boundary problem.
struct BranchPoint {
    double lambda = 0.0;
    double supNorm = 0.0;  ///< u(0); radial minimal solutions peak at the center
    double eigMin = 0.0;   ///< smallest eigenvalue of the linearization
    double arclength = 0.0;
    RadialField field;
    std::vector<double> state;  ///< interleaved (u_i, v_i) solver unknowns
};

struct BranchConfig {
    NavierConfig solver{};
    double lambda0 = -1.0;   ///< <= 0: pick so the first supNorm is ~0.01
    double ds0 = -1.0;       ///< <= 0: 0.2 * lambda0
    double dsMax = -1.0;     ///< <= 0: 10 * ds0
    std::size_t maxPoints = 600;
    double maxArclength = 1e9;
    double supNormCap = 50.0;
    double postFoldFraction = 0.6;  ///< stop once lambda < frac * lambdaStar past the fold
};

/// Continuation curve through the first fold.
struct Branch {
    std::vector<BranchPoint> points;  ///< ordered by arclength
    double lambdaStar = 0.0;          ///< fold estimate (parabolic refinement)
    int foldIndex = -1;               ///< index of the point nearest the fold, -1 if none
    bool stalled = false;             ///< continuation gave up before a stop condition
};

/// Newton solve at fixed lambda from the given interleaved guess (empty =
/// zero guess).  Throws std::runtime_error on divergence.
BranchPoint solve_at(const ProblemParams& params, double lambda,
                     std::span<const double> initialGuess = {}, const NavierConfig& cfg = {});

/// Pseudo-arclength continuation from (lambda ~ 0, u ~ 0) through the fold,
/// with secant tangents and step refinement around the turning point.
Branch trace_branch(const ProblemParams& params, const BranchConfig& cfg = {});

/// Mesh-refinement probe of the fold: lambdaStar and the fold supNorm at
/// N and 2N.  For n < n_p the fold supNorm must be grid-stable (bounded
/// extremal solution); for n >= n_p the numbers are reported as a trend
/// only.
struct ProbeReport {
    int nP = 0;
    bool belowCritical = false;
    bool foldFound = false;
    bool bounded = false;  ///< belowCritical and fold supNorm stable to 1%
    double lambdaStarCoarse = 0.0, lambdaStarFine = 0.0, lambdaStarRelDiff = 0.0;
    double foldSupCoarse = 0.0, foldSupFine = 0.0, foldSupRelDiff = 0.0;
};

ProbeReport extremal_regularity_probe(const ProblemParams& params, const BranchConfig& cfg = {});

}  // namespace bilem
