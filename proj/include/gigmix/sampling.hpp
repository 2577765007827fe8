#pragma once

#include <cstdint>
#include <vector>

#include "gigmix/mixture.hpp"
#include "gigmix/pythagorean.hpp"
#include "gigmix/rng.hpp"

namespace gigmix {

// Exact GIG sampler: ratio-of-uniforms with mode shift on the standardized
// two-parameter form (order lambda, omega = beta), then scaled by alpha.
// Works for all real lambda and beta > 0 without regime switching.
class GigSampler {
public:
    explicit GigSampler(const GigParams& params);

    double draw(Rng& rng) const;

private:
    GigParams params_;
    double mode_ = 1.0;       // mode of the standardized density
    double log_gm_ = 0.0;     // unnormalized log density at the mode
    double v_lo_ = 0.0;       // inf of (x - m) sqrt(g(x)/g(m))
    double v_hi_ = 0.0;       // sup of (x - m) sqrt(g(x)/g(m))

    double log_g(double x) const;  // standardized unnormalized log density
};

double sample_family_one(const FamilyMember& member, Rng& rng);

// n independent draws; draw i consumes substream (seed, kSampling, i), so the
// parallel version is bit-identical to the serial one.
std::vector<double> sample_gig(const GigParams& params, std::size_t n, RngSeed seed);
std::vector<double> sample_gig_serial(const GigParams& params, std::size_t n, RngSeed seed);

struct MixtureDraw {
    double value = 0.0;
    int label = 0;
};

std::vector<MixtureDraw> sample_mixture(const MixtureModel& model, std::size_t n, RngSeed seed);
std::vector<MixtureDraw> sample_mixture_serial(const MixtureModel& model, std::size_t n,
                                               RngSeed seed);

}  // namespace gigmix
