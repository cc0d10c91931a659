#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bilem/dopri5.hpp"
#include "bilem/pchip.hpp"
#include "bilem/types.hpp"

namespace bilem {

/// Source term f(u) of the fourth-order equation Delta^2 u = f(u).
enum class SourceKind {
    Power,          ///< f(u) = |u|^{p-1} u
    NegativePower,  ///< f(u) = -u^{-p}, u > 0
    Navier,         ///< f(u) = lambda (1+u)^p  (unit-ball boundary problem)
};

/// Pointwise sample of a radial solution and its running integrals.
/// intA(r) = int_0^r v^2 s^{n-1} ds and intB(r) = int_0^r B(u) s^{n-1} ds
/// with B(u) the kind-specific potential base (|u|^{p+1}, u^{1-p}, or
/// (1+u)^{p+1}); every volume quantity used downstream is a linear
/// combination of the two.
struct FieldPoint {
    double u = 0.0, du = 0.0, v = 0.0, dv = 0.0;
    double intA = 0.0, intB = 0.0;
};

/// Dense (arbitrary-r) access to a radial solution.
class FieldSampler {
public:
    virtual ~FieldSampler() = default;
    virtual FieldPoint at(double r) const = 0;
    virtual double r_min() const = 0;
    virtual double r_max() const = 0;
};

/// A sampled radial function u(r) with derivatives, v = Delta u, and
/// running volume integrals, on a strictly increasing grid.  Dense access
/// between grid points goes through the attached sampler.
struct RadialField {
    ProblemParams params;
    SourceKind kind = SourceKind::Power;
    double navierLambda = 0.0;  ///< lambda for SourceKind::Navier
    bool smoothOrigin = true;   ///< false for fields singular at r = 0
    double rTrust = 0.0;        ///< derived evaluations refuse r below this
    double quadRelTol = 1e-15;  ///< accuracy of the running integrals
    double quadAbsTol = 1e-15;

    std::vector<double> r, u, du, v, dv, intA, intB;
    std::shared_ptr<const FieldSampler> sampler;

    std::size_t size() const { return r.size(); }
    void validate() const;

    double source(double uVal) const;            ///< f(u)
    double potential_base(double uVal) const;    ///< B(u)
    double potential_weight() const;             ///< F(u) = weight * B(u)
    double potential(double uVal) const { return potential_weight() * potential_base(uVal); }

    /// Dense evaluation; throws std::out_of_range outside the sampler span.
    FieldPoint at(double rq) const;

    /// Energy volume integral int_0^r (v^2/2 - F(u)) s^{n-1} ds.
    double vol_int(const FieldPoint& pt) const {
        return 0.5 * pt.intA - potential_weight() * pt.intB;
    }
};

/// Field of an exact profile u(r) = A r^e with analytic derivatives and
/// closed-form running integrals.
class HomogeneousSampler final : public FieldSampler {
public:
    HomogeneousSampler(ProblemParams params, SourceKind kind, double amplitude, double exponent);
    FieldPoint at(double r) const override;
    double r_min() const override { return 0.0; }
    double r_max() const override { return 1e300; }

private:
    ProblemParams params_;
    SourceKind kind_;
    double A_, e_;
    double qA_ = 0.0, qB_ = 0.0;  // integral exponents
};

/// Dense output of an adaptive integration run.
class OdeFieldSampler final : public FieldSampler {
public:
    explicit OdeFieldSampler(std::shared_ptr<const Dopri5Dense> dense) : dense_(std::move(dense)) {}
    FieldPoint at(double r) const override;
    double r_min() const override { return dense_->r_front(); }
    double r_max() const override { return dense_->r_back(); }

private:
    std::shared_ptr<const Dopri5Dense> dense_;
};

/// Shape-preserving interpolation of tabulated fields (CSV input,
/// resampled grids).  Running integrals are rebuilt by quadrature of the
/// interpolant when the table does not carry them.
class PchipFieldSampler final : public FieldSampler {
public:
    explicit PchipFieldSampler(const RadialField& field);
    FieldPoint at(double r) const override;
    double r_min() const override { return u_.x_front(); }
    double r_max() const override { return u_.x_back(); }

private:
    PchipInterpolant u_, du_, v_, dv_, intA_, intB_;
};

/// Rescaled view u_lambda(r) = lambda^{4/(p-1)} u(lambda r) of a base
/// sampler (Power kind only).
class RescaledFieldSampler final : public FieldSampler {
public:
    RescaledFieldSampler(std::shared_ptr<const FieldSampler> base, ProblemParams params,
                         double lambda);
    FieldPoint at(double r) const override;
    double r_min() const override;
    double r_max() const override;

private:
    std::shared_ptr<const FieldSampler> base_;
    double lambda_;
    double su_, sdu_, sv_, sdv_, sint_;  // power-law scale factors
};

/// Rebuilds grid arrays (u, du, v, dv, intA, intB) from the attached
/// sampler at the given radii.
void populate_from_sampler(RadialField& field, std::span<const double> radii);

}  // namespace bilem
