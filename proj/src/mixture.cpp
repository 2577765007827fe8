#include "gigmix/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "gigmix/errors.hpp"
#include "gigmix/special.hpp"

namespace gigmix {

namespace {

// tie-break key: concentration-like parameter, then order-like parameter
std::tuple<double, double, double> ordering_key(const FamilyMember& m) {
    const double mean = m.arithmetic_mean();
    switch (m.kind()) {
        case FamilyKind::Gamma:
            return {mean, m.gamma_params().rate, m.gamma_params().shape};
        case FamilyKind::InverseGamma:
            return {mean, m.inverse_gamma_params().scale, m.inverse_gamma_params().shape};
        default:
            return {mean, m.gig_params().beta, m.gig_params().lambda};
    }
}

}  // namespace

void MixtureModel::validate() const {
    if (weights.empty() || weights.size() != components.size()) {
        throw DomainError("MixtureModel: weights and components must be non-empty and equal-sized");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw DomainError("MixtureModel: weights must be nonnegative");
        }
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw DomainError("MixtureModel: weights must sum to 1");
    }
}

void MixtureModel::canonicalize() {
    std::vector<std::size_t> idx(weights.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ordering_key(components[a]) < ordering_key(components[b]);
    });
    std::vector<double> w(weights.size());
    std::vector<FamilyMember> c;
    c.reserve(components.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        w[i] = weights[idx[i]];
        c.push_back(components[idx[i]]);
    }
    weights = std::move(w);
    components = std::move(c);
}

LogDensityKernel LogDensityKernel::from(const FamilyMember& member) {
    LogDensityKernel k;
    switch (member.kind()) {
        case FamilyKind::Gamma: {
            const auto& p = member.gamma_params();
            k.log_norm = p.shape * std::log(p.rate) - log_gamma_fn(p.shape);
            k.power = p.shape - 1.0;
            k.lin_coef = p.rate;
            k.inv_coef = 0.0;
            break;
        }
        case FamilyKind::InverseGamma: {
            const auto& p = member.inverse_gamma_params();
            k.log_norm = p.shape * std::log(p.scale) - log_gamma_fn(p.shape);
            k.power = -(p.shape + 1.0);
            k.lin_coef = 0.0;
            k.inv_coef = p.scale;
            break;
        }
        default: {
            const auto& p = member.gig_params();
            k.log_norm = -std::log(2.0 * p.alpha) - log_bessel_k(p.lambda, p.beta) -
                         (p.lambda - 1.0) * std::log(p.alpha);
            k.power = p.lambda - 1.0;
            k.lin_coef = 0.5 * p.beta / p.alpha;
            k.inv_coef = 0.5 * p.beta * p.alpha;
            break;
        }
    }
    return k;
}

double LogDensityKernel::log_pdf(double x) const {
    return log_norm + power * std::log(x) - lin_coef * x - inv_coef / x;
}

MixtureEval::MixtureEval(const MixtureModel& model) {
    model.validate();
    weights_ = model.weights;
    log_weights_.resize(weights_.size());
    kernels_.reserve(weights_.size());
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        log_weights_[j] = weights_[j] > 0.0 ? std::log(weights_[j])
                                            : -std::numeric_limits<double>::infinity();
        kernels_.push_back(LogDensityKernel::from(model.components[j]));
    }
}

double MixtureEval::log_pdf(double x) const {
    constexpr std::size_t kStack = 16;
    double buf[kStack];
    std::vector<double> heap;
    double* vals = buf;
    if (kernels_.size() > kStack) {
        heap.resize(kernels_.size());
        vals = heap.data();
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < kernels_.size(); ++j) {
        vals[j] = log_weights_[j] + kernels_[j].log_pdf(x);
        best = std::max(best, vals[j]);
    }
    if (!std::isfinite(best)) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t j = 0; j < kernels_.size(); ++j) s += std::exp(vals[j] - best);
    return best + std::log(s);
}

double mixture_log_pdf(const MixtureModel& model, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mixture_log_pdf: x must be positive");
    return MixtureEval(model).log_pdf(x);
}

MixtureModel demo_mixture() {
    MixtureModel m;
    m.weights = {0.3, 0.45, 0.25};
    m.components = {
        FamilyMember::gig({-0.5, 0.8, 3.0}),
        FamilyMember::gig({2.0, 3.0, 2.0}),
        FamilyMember::gig({5.0, 8.0, 4.0}),
    };
    m.validate();
    m.canonicalize();
    return m;
}

}  // namespace gigmix
