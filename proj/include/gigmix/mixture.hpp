#pragma once

#include <vector>

#include "gigmix/pythagorean.hpp"

namespace gigmix {

// Finite mixture: weights pi_j and component parameter records theta_j.
// Canonical ordering sorts components by ascending arithmetic mean (ties by
// ascending concentration, then order) so that posterior summaries are
// well-defined under label switching.
struct MixtureModel {
    std::vector<double> weights;
    std::vector<FamilyMember> components;

    std::size_t k() const { return weights.size(); }
    void validate() const;
    void canonicalize();
};

// Every family member shares the Pythagorean form
//   ln f(x) = log_norm + power * ln x - lin_coef * x - inv_coef / x,
// precomputed once so hot loops avoid repeated Bessel evaluations.
struct LogDensityKernel {
    double log_norm = 0.0;
    double power = 0.0;
    double lin_coef = 0.0;
    double inv_coef = 0.0;

    static LogDensityKernel from(const FamilyMember& member);

    double log_pdf(double x) const;
};

// Cached mixture evaluator (log-sum-exp over component kernels).
class MixtureEval {
public:
    explicit MixtureEval(const MixtureModel& model);

    double log_pdf(double x) const;
    std::size_t k() const { return kernels_.size(); }
    const LogDensityKernel& kernel(std::size_t j) const { return kernels_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }

private:
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::vector<LogDensityKernel> kernels_;
};

double mixture_log_pdf(const MixtureModel& model, double x);

// Three-component GIG demo model used by the simulation examples.
MixtureModel demo_mixture();

}  // namespace gigmix
