#include "gigmix/sampling.hpp"

#include <cmath>

#include "gigmix/errors.hpp"

namespace gigmix {

namespace {

// stationary points of h(x) = (x - m) sqrt(g(x)): solve in u = ln x
// 2/(x - m) + dlng(x) = 0 on either side of the mode.
double bisect_h_extremum(double mode, double lambda, double beta, bool right) {
    auto r = [&](double u) {
        const double x = std::exp(u);
        const double dlng = (lambda - 1.0) / x - 0.5 * beta * (1.0 - 1.0 / (x * x));
        return 2.0 / (x - mode) + dlng;
    };
    const double um = std::log(mode);
    double lo, hi;
    if (right) {
        // r -> +inf at mode+, r -> -beta/2 as x -> inf
        lo = um + 1e-9;
        hi = um + 1.0;
        while (r(hi) > 0.0) {
            hi += (hi - um) ;
            if (hi > um + 700.0) break;
        }
    } else {
        // r -> +inf as x -> 0+, r -> -inf at mode-
        hi = um - 1e-9;
        lo = um - 1.0;
        while (r(lo) < 0.0) {
            lo -= (um - lo);
            if (lo < um - 700.0) break;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (r(mid) > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * (1.0 + std::fabs(hi))) break;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

GigSampler::GigSampler(const GigParams& params) : params_(params) {
    params.validate();
    const double lm1 = params.lambda - 1.0;
    mode_ = (lm1 + std::sqrt(lm1 * lm1 + params.beta * params.beta)) / params.beta;
    log_gm_ = log_g(mode_);
    const double xr = bisect_h_extremum(mode_, params.lambda, params.beta, true);
    const double xl = bisect_h_extremum(mode_, params.lambda, params.beta, false);
    v_hi_ = (xr - mode_) * std::exp(0.5 * (log_g(xr) - log_gm_));
    v_lo_ = (xl - mode_) * std::exp(0.5 * (log_g(xl) - log_gm_));
}

double GigSampler::log_g(double x) const {
    return (params_.lambda - 1.0) * std::log(x) - 0.5 * params_.beta * (x + 1.0 / x);
}

double GigSampler::draw(Rng& rng) const {
    while (true) {
        const double u = rng.uniform_pos();
        const double v = rng.uniform(v_lo_, v_hi_);
        const double x = mode_ + v / u;
        if (!(x > 0.0)) continue;
        if (2.0 * std::log(u) <= log_g(x) - log_gm_) {
            return params_.alpha * x;
        }
    }
}

namespace {

// Marsaglia-Tsang; exact for all shape > 0
double sample_gamma_shape(double shape, Rng& rng) {
    if (shape < 1.0) {
        const double u = rng.uniform_pos();
        return sample_gamma_shape(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double z, v;
        do {
            z = rng.normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
            return d * v;
        }
    }
}

}  // namespace

double sample_family_one(const FamilyMember& member, Rng& rng) {
    switch (member.kind()) {
        case FamilyKind::Gamma: {
            const auto& p = member.gamma_params();
            return sample_gamma_shape(p.shape, rng) / p.rate;
        }
        case FamilyKind::InverseGamma: {
            const auto& p = member.inverse_gamma_params();
            return p.scale / sample_gamma_shape(p.shape, rng);
        }
        default:
            return GigSampler(member.gig_params()).draw(rng);
    }
}

namespace {

template <bool Parallel>
std::vector<double> sample_gig_impl(const GigParams& params, std::size_t n, RngSeed seed) {
    if (n == 0) throw DomainError("sample_gig: n must be >= 1");
    GigSampler sampler(params);
    std::vector<double> out(n);
    const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < sn; ++i) {
        Rng rng = Rng::substream(seed, streams::kSampling, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = sampler.draw(rng);
    }
    return out;
}

template <bool Parallel>
std::vector<MixtureDraw> sample_mixture_impl(const MixtureModel& model, std::size_t n,
                                             RngSeed seed) {
    model.validate();
    if (n == 0) throw DomainError("sample_mixture: n must be >= 1");
    // per-component samplers precomputed once
    std::vector<GigSampler> gig_samplers;
    std::vector<int> gig_index(model.k(), -1);
    for (std::size_t j = 0; j < model.k(); ++j) {
        if (model.components[j].is_gig_kind()) {
            gig_index[j] = static_cast<int>(gig_samplers.size());
            gig_samplers.emplace_back(model.components[j].gig_params());
        }
    }
    std::vector<double> cum(model.k());
    double acc = 0.0;
    for (std::size_t j = 0; j < model.k(); ++j) {
        acc += model.weights[j];
        cum[j] = acc;
    }
    cum.back() = 1.0;

    std::vector<MixtureDraw> out(n);
    const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < sn; ++i) {
        Rng rng = Rng::substream(seed, streams::kMixtureComponent, static_cast<std::uint64_t>(i));
        const double u = rng.uniform();
        std::size_t j = 0;
        while (j + 1 < cum.size() && u >= cum[j]) ++j;
        double value;
        if (gig_index[j] >= 0) {
            value = gig_samplers[static_cast<std::size_t>(gig_index[j])].draw(rng);
        } else {
            value = sample_family_one(model.components[j], rng);
        }
        out[static_cast<std::size_t>(i)] = MixtureDraw{value, static_cast<int>(j)};
    }
    return out;
}

}  // namespace

std::vector<double> sample_gig(const GigParams& params, std::size_t n, RngSeed seed) {
    return sample_gig_impl<true>(params, n, seed);
}

std::vector<double> sample_gig_serial(const GigParams& params, std::size_t n, RngSeed seed) {
    return sample_gig_impl<false>(params, n, seed);
}

std::vector<MixtureDraw> sample_mixture(const MixtureModel& model, std::size_t n, RngSeed seed) {
    return sample_mixture_impl<true>(model, n, seed);
}

std::vector<MixtureDraw> sample_mixture_serial(const MixtureModel& model, std::size_t n,
                                               RngSeed seed) {
    return sample_mixture_impl<false>(model, n, seed);
}

}  // namespace gigmix
