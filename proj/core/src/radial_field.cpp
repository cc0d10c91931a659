#include "bilem/radial_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bilem/stencils.hpp"

namespace bilem {

void RadialField::validate() const {
    params.validate();
    const std::size_t m = r.size();
    if (u.size() != m || du.size() != m || v.size() != m || dv.size() != m ||
        intA.size() != m || intB.size() != m)
        throw std::invalid_argument("RadialField: column length mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(r[i] > 0.0)) throw std::invalid_argument("RadialField: radii must be positive");
        if (i > 0 && !(r[i] > r[i - 1]))
            throw std::invalid_argument("RadialField: radii must be strictly increasing");
    }
}

double RadialField::source(double uVal) const {
    switch (kind) {
        case SourceKind::Power:
            return std::pow(std::abs(uVal), params.p - 1.0) * uVal;
        case SourceKind::NegativePower:
            if (!(uVal > 0.0))
                throw std::domain_error("RadialField: negative-exponent source needs u > 0");
            return -std::pow(uVal, -params.p);
        case SourceKind::Navier:
            return navierLambda * std::pow(1.0 + uVal, params.p);
    }
    throw std::logic_error("RadialField: bad kind");
}

double RadialField::potential_base(double uVal) const {
    switch (kind) {
        case SourceKind::Power:
            return std::pow(std::abs(uVal), params.p + 1.0);
        case SourceKind::NegativePower:
            if (!(uVal > 0.0))
                throw std::domain_error("RadialField: negative-exponent potential needs u > 0");
            return std::pow(uVal, 1.0 - params.p);
        case SourceKind::Navier:
            return std::pow(1.0 + uVal, params.p + 1.0);
    }
    throw std::logic_error("RadialField: bad kind");
}

double RadialField::potential_weight() const {
    switch (kind) {
        case SourceKind::Power:
            return 1.0 / (params.p + 1.0);
        case SourceKind::NegativePower:
            return 1.0 / (params.p - 1.0);
        case SourceKind::Navier:
            return navierLambda / (params.p + 1.0);
    }
    throw std::logic_error("RadialField: bad kind");
}

FieldPoint RadialField::at(double rq) const {
    if (!sampler) throw std::logic_error("RadialField: no sampler attached");
    const double lo = sampler->r_min(), hi = sampler->r_max();
    const double slack = 1e-12 * std::max(1.0, std::abs(rq));
    if (rq < lo - slack || rq > hi + slack)
        throw std::out_of_range("RadialField: query outside sampled range");
    return sampler->at(std::clamp(rq, lo, hi));
}

HomogeneousSampler::HomogeneousSampler(ProblemParams params, SourceKind kind, double amplitude,
                                       double exponent)
    : params_(params), kind_(kind), A_(amplitude), e_(exponent) {
    params_.validate();
    if (kind_ == SourceKind::Navier)
        throw std::invalid_argument("HomogeneousSampler: no homogeneous Navier profiles");
    qA_ = params_.n + 2.0 * e_ - 4.0;
    qB_ = (kind_ == SourceKind::Power) ? params_.n + e_ * (params_.p + 1.0)
                                       : params_.n + e_ * (1.0 - params_.p);
    if (A_ != 0.0 && (qA_ <= 0.0 || qB_ <= 0.0))
        throw std::domain_error("HomogeneousSampler: running integrals diverge at the origin");
}

FieldPoint HomogeneousSampler::at(double r) const {
    FieldPoint pt;
    if (A_ == 0.0) return pt;
    if (!(r > 0.0)) throw std::out_of_range("HomogeneousSampler: r must be positive");
    const double n = params_.n;
    pt.u = A_ * std::pow(r, e_);
    pt.du = A_ * e_ * std::pow(r, e_ - 1.0);
    const double lapCoef = e_ * (e_ + n - 2.0);
    pt.v = A_ * lapCoef * std::pow(r, e_ - 2.0);
    pt.dv = A_ * lapCoef * (e_ - 2.0) * std::pow(r, e_ - 3.0);
    pt.intA = A_ * A_ * lapCoef * lapCoef * std::pow(r, qA_) / qA_;
    const double baseAmp = (kind_ == SourceKind::Power)
                               ? std::pow(std::abs(A_), params_.p + 1.0)
                               : std::pow(A_, 1.0 - params_.p);
    pt.intB = baseAmp * std::pow(r, qB_) / qB_;
    return pt;
}

FieldPoint OdeFieldSampler::at(double r) const {
    double y[6];
    dense_->eval(r, y);
    return FieldPoint{y[0], y[1], y[2], y[3], y[4], y[5]};
}

PchipFieldSampler::PchipFieldSampler(const RadialField& field)
    : u_(field.r, field.u),
      du_(field.r, field.du),
      v_(field.r, field.v),
      dv_(field.r, field.dv),
      intA_(field.r, field.intA),
      intB_(field.r, field.intB) {}

FieldPoint PchipFieldSampler::at(double r) const {
    return FieldPoint{u_(r), du_(r), v_(r), dv_(r), intA_(r), intB_(r)};
}

RescaledFieldSampler::RescaledFieldSampler(std::shared_ptr<const FieldSampler> base,
                                           ProblemParams params, double lambda)
    : base_(std::move(base)), lambda_(lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("RescaledFieldSampler: lambda must be > 0");
    const double g = params.gamma();
    su_ = std::pow(lambda, g);
    sdu_ = std::pow(lambda, g + 1.0);
    sv_ = std::pow(lambda, g + 2.0);
    sdv_ = std::pow(lambda, g + 3.0);
    sint_ = std::pow(lambda, 2.0 * g + 4.0 - params.n);
}

FieldPoint RescaledFieldSampler::at(double r) const {
    FieldPoint b = base_->at(lambda_ * r);
    return FieldPoint{su_ * b.u, sdu_ * b.du, sv_ * b.v, sdv_ * b.dv, sint_ * b.intA,
                      sint_ * b.intB};
}

double RescaledFieldSampler::r_min() const { return base_->r_min() / lambda_; }
double RescaledFieldSampler::r_max() const { return base_->r_max() / lambda_; }

void populate_from_sampler(RadialField& field, std::span<const double> radii) {
    if (!field.sampler) throw std::logic_error("populate_from_sampler: no sampler");
    const std::size_t m = radii.size();
    field.r.assign(radii.begin(), radii.end());
    field.u.resize(m);
    field.du.resize(m);
    field.v.resize(m);
    field.dv.resize(m);
    field.intA.resize(m);
    field.intB.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const FieldPoint pt = field.sampler->at(radii[i]);
        field.u[i] = pt.u;
        field.du[i] = pt.du;
        field.v[i] = pt.v;
        field.dv[i] = pt.dv;
        field.intA[i] = pt.intA;
        field.intB[i] = pt.intB;
    }
    field.validate();
}

}  // namespace bilem
