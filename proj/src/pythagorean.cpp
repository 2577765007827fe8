#include "gigmix/pythagorean.hpp"

#include <cmath>
#include <limits>

#include "gigmix/errors.hpp"
#include "gigmix/special.hpp"

namespace gigmix {

void GigParams::validate() const {
    if (!std::isfinite(lambda) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("GigParams: non-finite parameter");
    }
    if (alpha <= 0.0 || beta <= 0.0) {
        throw DomainError("GigParams: alpha and beta must be positive");
    }
}

void GammaParams::validate() const {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
        throw DomainError("GammaParams: shape and rate must be positive");
    }
}

void InverseGammaParams::validate() const {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
        throw DomainError("InverseGammaParams: shape and scale must be positive");
    }
}

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Gig: return "gig";
        case FamilyKind::Gamma: return "gamma";
        case FamilyKind::InverseGamma: return "inverse_gamma";
        case FamilyKind::InverseGaussian: return "inverse_gaussian";
        case FamilyKind::ReciprocalInverseGaussian: return "reciprocal_inverse_gaussian";
        case FamilyKind::Hyperbolic: return "hyperbolic";
    }
    throw DomainError("unknown family kind");
}

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "gig") return FamilyKind::Gig;
    if (name == "gamma") return FamilyKind::Gamma;
    if (name == "inverse_gamma") return FamilyKind::InverseGamma;
    if (name == "inverse_gaussian" || name == "ig") return FamilyKind::InverseGaussian;
    if (name == "reciprocal_inverse_gaussian" || name == "rig") {
        return FamilyKind::ReciprocalInverseGaussian;
    }
    if (name == "hyperbolic" || name == "h") return FamilyKind::Hyperbolic;
    throw ValidationError("unknown family kind: " + name);
}

FamilyMember FamilyMember::gig(GigParams p) {
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::Gig;
    m.params_ = p;
    return m;
}

FamilyMember FamilyMember::gamma(double shape, double rate) {
    GammaParams p{shape, rate};
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::Gamma;
    m.params_ = p;
    return m;
}

FamilyMember FamilyMember::inverse_gamma(double shape, double scale) {
    InverseGammaParams p{shape, scale};
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::InverseGamma;
    m.params_ = p;
    return m;
}

FamilyMember FamilyMember::inverse_gaussian(double alpha, double beta) {
    GigParams p{-0.5, alpha, beta};
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::InverseGaussian;
    m.params_ = p;
    return m;
}

FamilyMember FamilyMember::reciprocal_inverse_gaussian(double alpha, double beta) {
    GigParams p{0.5, alpha, beta};
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::ReciprocalInverseGaussian;
    m.params_ = p;
    return m;
}

FamilyMember FamilyMember::hyperbolic(double alpha, double beta) {
    GigParams p{0.0, alpha, beta};
    p.validate();
    FamilyMember m;
    m.kind_ = FamilyKind::Hyperbolic;
    m.params_ = p;
    return m;
}

bool FamilyMember::is_gig_kind() const {
    return std::holds_alternative<GigParams>(params_);
}

const GigParams& FamilyMember::gig_params() const {
    if (!is_gig_kind()) throw DomainError("FamilyMember: not a GIG-kind member");
    return std::get<GigParams>(params_);
}

const GammaParams& FamilyMember::gamma_params() const {
    if (kind_ != FamilyKind::Gamma) throw DomainError("FamilyMember: not a gamma member");
    return std::get<GammaParams>(params_);
}

const InverseGammaParams& FamilyMember::inverse_gamma_params() const {
    if (kind_ != FamilyKind::InverseGamma) {
        throw DomainError("FamilyMember: not an inverse-gamma member");
    }
    return std::get<InverseGammaParams>(params_);
}

double FamilyMember::arithmetic_mean() const {
    switch (kind_) {
        case FamilyKind::Gamma: {
            const auto& p = gamma_params();
            return p.shape / p.rate;
        }
        case FamilyKind::InverseGamma: {
            const auto& p = inverse_gamma_params();
            if (p.shape <= 1.0) return std::numeric_limits<double>::infinity();
            return p.scale / (p.shape - 1.0);
        }
        default:
            return gig_means(gig_params()).mu;
    }
}

double gig_log_pdf(const GigParams& params, double x) {
    params.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gig_log_pdf: x must be positive");
    const double r = x / params.alpha;
    return -std::log(2.0 * params.alpha) - log_bessel_k(params.lambda, params.beta) +
           (params.lambda - 1.0) * std::log(r) - 0.5 * params.beta * (r + 1.0 / r);
}

double family_log_pdf(const FamilyMember& member, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("family_log_pdf: x must be positive");
    switch (member.kind()) {
        case FamilyKind::Gamma: {
            const auto& p = member.gamma_params();
            return p.shape * std::log(p.rate) - log_gamma_fn(p.shape) +
                   (p.shape - 1.0) * std::log(x) - p.rate * x;
        }
        case FamilyKind::InverseGamma: {
            const auto& p = member.inverse_gamma_params();
            return p.shape * std::log(p.scale) - log_gamma_fn(p.shape) -
                   (p.shape + 1.0) * std::log(x) - p.scale / x;
        }
        default:
            return gig_log_pdf(member.gig_params(), x);
    }
}

PythagoreanMeans gig_means(const GigParams& params) {
    params.validate();
    const double lk = log_bessel_k(params.lambda, params.beta);
    const double lk_up = log_bessel_k(params.lambda + 1.0, params.beta);
    const double lk_dn = log_bessel_k(params.lambda - 1.0, params.beta);
    PythagoreanMeans m;
    m.mu = params.alpha * std::exp(lk_up - lk);
    m.eta = params.alpha * std::exp(lk - lk_dn);
    m.gamma_mean = params.alpha * std::exp(dlog_bessel_k_dorder(params.lambda, params.beta));
    return m;
}

double gig_entropy(const GigParams& params, bool prior_is_uniform) {
    if (!prior_is_uniform) {
        throw DomainError("gig_entropy: tabulated priors are handled by the maxent solver");
    }
    params.validate();
    const Multipliers m = multipliers_from_gig(params);
    const PythagoreanMeans means = gig_means(params);
    const double log_gamma_mean = std::log(means.gamma_mean);
    return m.lambda0 + m.lambda1 * means.mu + m.lambda2 / means.eta -
           (m.lambda3 - 1.0) * log_gamma_mean;
}

Multipliers multipliers_from_gig(const GigParams& params) {
    params.validate();
    Multipliers m;
    m.lambda1 = 0.5 * params.beta / params.alpha;
    m.lambda2 = 0.5 * params.beta * params.alpha;
    m.lambda3 = params.lambda;
    m.lambda0 = std::log(2.0 * params.alpha) + log_bessel_k(params.lambda, params.beta);
    return m;
}

GigParams gig_from_multipliers(const Multipliers& m) {
    if (!(m.lambda1 > 0.0) || !(m.lambda2 > 0.0)) {
        throw DomainError("gig_from_multipliers: lambda1 and lambda2 must be positive");
    }
    GigParams p;
    p.lambda = m.lambda3;
    p.alpha = std::sqrt(m.lambda2 / m.lambda1);
    p.beta = 2.0 * std::sqrt(m.lambda1 * m.lambda2);
    return p;
}

}  // namespace gigmix
