#pragma once

namespace gigmix {

// Lagrange multipliers of the moment-constrained maximum-entropy density
//   f(x) = q(x) exp(-lambda0) x^(lambda3 - 1) exp(-lambda1 x - lambda2 / x),
// lambda0 being the log partition function.
struct Multipliers {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 1.0;
};

}  // namespace gigmix
