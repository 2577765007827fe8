#pragma once

namespace gigmix {

struct BesselResult {
    double log_value = 0.0;
    bool converged = false;
    int terms_or_iterations = 0;
};

// ln K_nu(x) for real nu and x > 0, evaluated in log space. Supported
// envelope: x in [1e-6, 700], |nu| <= 100; outside it a RangeError is thrown
// rather than silently degrading. Relative error in K is <= 1e-10 across the
// envelope (typically much better).
BesselResult log_bessel_k_full(double order, double arg);
double log_bessel_k(double order, double arg);

// d/dnu ln K_nu(x), central finite difference with step 1e-5.
double dlog_bessel_k_dorder(double order, double arg);

// ln Gamma(x) for x > 0 (Lanczos approximation).
double log_gamma_fn(double x);

}  // namespace gigmix
