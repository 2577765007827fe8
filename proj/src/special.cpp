#include "gigmix/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gigmix/errors.hpp"
#include "gigmix/quadrature.hpp"

namespace gigmix {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kOrderMax = 100.0;
constexpr double kArgMin = 1e-6;
constexpr double kArgMax = 700.0;

double log_cosh(double z) {
    z = std::fabs(z);
    return z + std::log1p(std::exp(-2.0 * z)) - kLn2;
}

// K_{m+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{j=0}^{m} (m+j)! / (j! (m-j)! (2x)^j),
// summed in log space so huge terms at small x stay representable.
BesselResult log_k_half_integer(int m, double x) {
    std::vector<double> lt(static_cast<std::size_t>(m) + 1);
    double lmax = -std::numeric_limits<double>::infinity();
    const double l2x = std::log(2.0 * x);
    for (int j = 0; j <= m; ++j) {
        lt[j] = log_gamma_fn(double(m + j + 1)) - log_gamma_fn(double(j + 1)) -
                log_gamma_fn(double(m - j + 1)) - j * l2x;
        lmax = std::max(lmax, lt[j]);
    }
    double s = 0.0;
    for (int j = 0; j <= m; ++j) s += std::exp(lt[j] - lmax);
    BesselResult r;
    r.log_value = 0.5 * std::log(kPi / (2.0 * x)) - x + lmax + std::log(s);
    r.converged = true;
    r.terms_or_iterations = m + 1;
    return r;
}

// exponent of the integral representation: g(t) = -x cosh t + ln cosh(nu t)
double rep_exponent(double nu, double x, double t) {
    return -x * std::cosh(t) + log_cosh(nu * t);
}

double rep_exponent_deriv(double nu, double x, double t) {
    return -x * std::sinh(t) + nu * std::tanh(nu * t);
}

}  // namespace

BesselResult log_bessel_k_full(double order, double arg) {
    if (!std::isfinite(order) || !std::isfinite(arg)) {
        throw DomainError("log_bessel_k: non-finite input");
    }
    if (arg <= 0.0) {
        throw DomainError("log_bessel_k: argument must be positive");
    }
    if (arg < kArgMin || arg > kArgMax || std::fabs(order) > kOrderMax) {
        throw RangeError("log_bessel_k: outside supported envelope (x in [1e-6, 700], |nu| <= 100)");
    }
    const double nu = std::fabs(order);  // K is even in the order
    const double x = arg;

    const double half_idx = nu - 0.5;
    const double rounded = std::round(half_idx);
    if (rounded >= 0.0 && std::fabs(half_idx - rounded) < 1e-12) {
        return log_k_half_integer(static_cast<int>(rounded), x);
    }

    // peak of the integrand exponent
    double t_peak = 0.0;
    if (nu * nu > x) {
        double lo = 0.0;
        double hi = std::asinh(nu / x) + 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (rep_exponent_deriv(nu, x, mid) > 0.0 ? lo : hi) = mid;
            if (hi - lo < 1e-14 * (1.0 + hi)) break;
        }
        t_peak = 0.5 * (lo + hi);
    }
    const double g_peak = rep_exponent(nu, x, t_peak);

    // right edge: g decays at least exponentially beyond the peak
    const double cut = g_peak - 60.0;
    double t_hi = t_peak + 0.5;
    double step = 0.5;
    while (rep_exponent(nu, x, t_hi) > cut) {
        step *= 2.0;
        t_hi = t_peak + step;
        if (t_hi > 1500.0) break;
    }
    {
        double inside = std::max(t_peak, t_hi - step);
        double outside = t_hi;
        for (int i = 0; i < 40; ++i) {
            const double mid = 0.5 * (inside + outside);
            (rep_exponent(nu, x, mid) > cut ? inside : outside) = mid;
        }
        t_hi = outside;
    }

    auto f = [&](double t) {
        const double v = rep_exponent(nu, x, t) - g_peak;
        return v > -745.0 ? std::exp(v) : 0.0;
    };
    quad::Result q = quad::integrate(f, 0.0, t_hi, 1e-12, 0.0, 4000);

    BesselResult r;
    r.log_value = g_peak + std::log(q.value);
    r.converged = q.converged;
    r.terms_or_iterations = q.evaluations;
    return r;
}

double log_bessel_k(double order, double arg) { return log_bessel_k_full(order, arg).log_value; }

double dlog_bessel_k_dorder(double order, double arg) {
    const double h = 1e-5;
    const double hi = log_bessel_k(order + h, arg);
    const double lo = log_bessel_k(order - h, arg);
    return (hi - lo) / (2.0 * h);
}

double log_gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma_fn: non-finite input");
    if (x <= 0.0) throw DomainError("log_gamma_fn: argument must be positive");
    if (x < 0.5) return log_gamma_fn(x + 1.0) - std::log(x);
    // Lanczos, g = 607/128, 15 coefficients
    static constexpr double kG = 4.7421875;
    static constexpr double kC[15] = {
        0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
        0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
        0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
    };
    const double z = x - 1.0;
    double a = kC[0];
    for (int k = 1; k < 15; ++k) a += kC[k] / (z + k);
    const double t = z + kG + 0.5;
    return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace gigmix
