#pragma once

#include <string>
#include <variant>

#include "gigmix/multipliers.hpp"

namespace gigmix {

// Order / scale / concentration parameterization of the generalized inverse
// Gaussian density
//   f(x) = (2 alpha K_lambda(beta))^-1 (x/alpha)^(lambda-1)
//          exp(-beta/2 (x/alpha + alpha/x)),   x > 0.
struct GigParams {
    double lambda = 0.0;
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const;
};

struct GammaParams {
    double shape = 1.0;
    double rate = 1.0;

    void validate() const;
};

struct InverseGammaParams {
    double shape = 1.0;
    double scale = 1.0;

    void validate() const;
};

enum class FamilyKind {
    Gig,
    Gamma,
    InverseGamma,
    InverseGaussian,            // GIG with lambda = -1/2
    ReciprocalInverseGaussian,  // GIG with lambda = +1/2
    Hyperbolic,                 // GIG with lambda = 0
};

std::string family_kind_name(FamilyKind kind);
FamilyKind family_kind_from_name(const std::string& name);

// One member of the Pythagorean family. Named GIG sub-classes carry
// GigParams with the order pinned to their defining value.
class FamilyMember {
public:
    static FamilyMember gig(GigParams p);
    static FamilyMember gamma(double shape, double rate);
    static FamilyMember inverse_gamma(double shape, double scale);
    static FamilyMember inverse_gaussian(double alpha, double beta);
    static FamilyMember reciprocal_inverse_gaussian(double alpha, double beta);
    static FamilyMember hyperbolic(double alpha, double beta);

    FamilyKind kind() const { return kind_; }
    bool is_gig_kind() const;
    const GigParams& gig_params() const;
    const GammaParams& gamma_params() const;
    const InverseGammaParams& inverse_gamma_params() const;

    // arithmetic mean (+inf when it does not exist), used for the canonical
    // component ordering
    double arithmetic_mean() const;

private:
    FamilyKind kind_ = FamilyKind::Gig;
    std::variant<GigParams, GammaParams, InverseGammaParams> params_;
};

// Arithmetic (mu), geometric (gamma_mean) and harmonic (eta) means.
struct PythagoreanMeans {
    double mu = 0.0;
    double gamma_mean = 0.0;
    double eta = 0.0;
};

double gig_log_pdf(const GigParams& params, double x);
double family_log_pdf(const FamilyMember& member, double x);

// Closed-form moments: mu = alpha K_{l+1}(b)/K_l(b), eta = alpha K_l(b)/K_{l-1}(b),
// ln gamma = ln alpha + d/dnu ln K_nu(b) at nu = l.
PythagoreanMeans gig_means(const GigParams& params);

// Differential entropy relative to the (improper uniform) prior.
double gig_entropy(const GigParams& params, bool prior_is_uniform = true);

// Eq.-(11)-style inversion between (lambda, alpha, beta) and multipliers.
Multipliers multipliers_from_gig(const GigParams& params);
GigParams gig_from_multipliers(const Multipliers& m);

}  // namespace gigmix
