#pragma once

#include <optional>
#include <vector>

#include "gigmix/multipliers.hpp"

namespace gigmix {

// Prior over the positive half-line: either the improper uniform prior or a
// tabulated density interpolated between knots (zero outside the knot range).
class PriorSpec {
public:
    enum class Kind { UniformImproper, Tabulated };

    static PriorSpec uniform();
    static PriorSpec tabulated(std::vector<double> x, std::vector<double> q);

    Kind kind() const { return kind_; }
    bool is_uniform() const { return kind_ == Kind::UniformImproper; }

    // ln q(x); 0 for the uniform prior, -inf outside tabulated support
    double log_q(double x) const;
    bool in_support(double x) const;
    double support_lo() const;
    double support_hi() const;

    const std::vector<double>& knots_x() const { return x_; }
    const std::vector<double>& knots_q() const { return q_; }

private:
    Kind kind_ = Kind::UniformImproper;
    std::vector<double> x_, q_, log_q_;
};

// Conserved-mean targets. Absent targets drop the corresponding constraint
// (and pin its multiplier: no mu -> lambda1 = 0, no eta -> lambda2 = 0,
// no gamma -> lambda3 = 1).
struct ConstraintSet {
    std::optional<double> target_mu;         // arithmetic mean
    std::optional<double> target_log_gamma;  // ln of geometric mean
    std::optional<double> target_inv_eta;    // reciprocal harmonic mean E[1/x]

    void validate() const;
};

struct MaxEntSolution {
    Multipliers multipliers;
    int newton_iterations = 0;
    bool converged = false;
    double residual = 0.0;            // max relative moment mismatch at exit
    std::vector<double> dual_trace;   // dual objective at accepted iterates
};

// lambda0 = ln of integral q(x) x^(lambda3-1) exp(-lambda1 x - lambda2/x) dx.
// Closed forms are used for the uniform prior where they exist; otherwise
// adaptive quadrature in log space. Divergent integrals raise
// NonNormalizableError.
double log_partition(const PriorSpec& prior, double lambda1, double lambda2, double lambda3);

// Safeguarded Newton minimization of the convex dual
//   lambda0 + lambda1 mu* + lambda2 (eta*)^-1 - (lambda3 - 1) ln gamma*.
MaxEntSolution solve_multipliers(const PriorSpec& prior, const ConstraintSet& constraints,
                                 std::optional<Multipliers> init = std::nullopt);

// ln f(x) = ln q(x) - lambda0 + (lambda3 - 1) ln x - lambda1 x - lambda2 / x
double maxent_log_pdf(const PriorSpec& prior, const Multipliers& m, double x);

}  // namespace gigmix
