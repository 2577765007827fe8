#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace gigmix::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
inline void gauss_kronrod_15(F&& f, double a, double b, double& integral, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 3; ++j) {
        const double dx = h * kXgk[2 * j + 1];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[2 * j + 1] * (f1 + f2);
    }
    for (int j = 0; j < 4; ++j) {
        const double dx = h * kXgk[2 * j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += kWgk[2 * j] * (f1 + f2);
    }
    integral = resk * h;
    error = std::fabs((resk - resg) * h);
}

struct Segment {
    double a, b, integral, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Stops when the summed error
// estimate drops below max(abs_tol, rel_tol * |integral|) or the panel
// budget runs out (converged = false in that case).
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                 int max_panels = 2000) {
    Result res;
    if (!(a < b)) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Segment> heap;
    detail::Segment s{a, b, 0.0, 0.0};
    detail::gauss_kronrod_15(f, a, b, s.integral, s.error);
    res.evaluations = 15;
    double total = s.integral;
    double total_err = s.error;
    heap.push(s);
    int panels = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) && panels < max_panels) {
        detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval exhausted at machine precision; keep its contribution
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            if (heap.top().error == 0.0) break;
            continue;
        }
        detail::Segment left{worst.a, mid, 0.0, 0.0};
        detail::Segment right{mid, worst.b, 0.0, 0.0};
        detail::gauss_kronrod_15(f, left.a, left.b, left.integral, left.error);
        detail::gauss_kronrod_15(f, right.a, right.b, right.integral, right.error);
        res.evaluations += 30;
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    res.value = total;
    res.abs_error = total_err;
    res.converged = total_err <= std::max(abs_tol, rel_tol * std::fabs(total)) ||
                    total_err <= 1e-14 * std::fabs(total) + 1e-300;
    return res;
}

struct LogResult {
    double log_value = -std::numeric_limits<double>::infinity();
    bool converged = false;
    bool divergent = false;
    int evaluations = 0;
    double u_peak = 0.0;
    double u_lo = 0.0;
    double u_hi = 0.0;
};

namespace detail {

// Locate the window in u that carries the mass of exp(phi(u)). phi may be
// -inf on parts of the line. Returns divergent=true when phi fails to drop
// below peak - drop before hitting the representable range.
template <class Phi>
inline LogResult find_window(Phi&& phi, double drop, double u_min, double u_max) {
    LogResult w;
    const double inf = std::numeric_limits<double>::infinity();
    double best_u = 0.0;
    double best = -inf;
    auto scan = [&](double lo, double hi, double step) {
        for (double u = lo; u <= hi; u += step) {
            const double v = phi(u);
            ++w.evaluations;
            if (std::isfinite(v) && v > best) {
                best = v;
                best_u = u;
            }
        }
    };
    scan(std::max(u_min, -60.0), std::min(u_max, 60.0), 0.5);
    if (!std::isfinite(best)) scan(std::max(u_min, -700.0), std::min(u_max, 700.0), 2.0);
    if (!std::isfinite(best)) {
        // identically zero (or unrepresentably small) integrand
        w.converged = true;
        return w;
    }
    // golden-section refinement around the best scan point
    {
        const double gr = 0.61803398874989484820;
        double a = std::max(u_min, best_u - 2.0);
        double b = std::min(u_max, best_u + 2.0);
        double x1 = b - gr * (b - a);
        double x2 = a + gr * (b - a);
        double f1 = phi(x1), f2 = phi(x2);
        for (int i = 0; i < 80 && (b - a) > 1e-11 * (1.0 + std::fabs(a)); ++i) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = phi(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = phi(x1);
            }
            w.evaluations += 1;
        }
        const double um = 0.5 * (a + b);
        const double fm = phi(um);
        if (std::isfinite(fm) && fm > best) {
            best = fm;
            best_u = um;
        }
    }
    w.u_peak = best_u;
    w.log_value = best;  // temporarily the peak value
    const double cut = best - drop;

    // expand in the given direction until phi < cut, doubling the step
    auto expand = [&](int dir) -> double {
        double step = 0.5;
        double u = best_u;
        const double limit = dir > 0 ? u_max : u_min;
        while (true) {
            double nu = best_u + dir * step;
            if (dir > 0 ? nu >= limit : nu <= limit) {
                const double v = phi(limit);
                ++w.evaluations;
                if (std::isfinite(v) && v > cut) w.divergent = true;
                return limit;
            }
            const double v = phi(nu);
            ++w.evaluations;
            if (!(v > cut)) {
                // bisect the crossing for a tight window
                double inside = u, outside = nu;
                for (int i = 0; i < 40; ++i) {
                    const double mid = 0.5 * (inside + outside);
                    const double vm = phi(mid);
                    ++w.evaluations;
                    (vm > cut ? inside : outside) = mid;
                }
                return outside;
            }
            u = nu;
            step *= 2.0;
        }
    };
    w.u_hi = expand(+1);
    if (!w.divergent) w.u_lo = expand(-1);
    return w;
}

}  // namespace detail

// ln of integral_0^inf exp(log_f(x)) dx, evaluated in u = ln x. Handles
// integrands whose magnitude spans far beyond double range; flags divergence
// when the integrand fails to decay.
template <class LogF>
LogResult log_integral_positive(LogF&& log_f, double rel_tol = 1e-9, double drop = 60.0,
                                double u_min = -745.0, double u_max = 709.0) {
    auto phi = [&](double u) { return log_f(std::exp(u)) + u; };
    LogResult w = detail::find_window(phi, drop, u_min, u_max);
    if (w.divergent || (w.converged && !std::isfinite(w.log_value))) return w;
    const double shift = w.log_value;
    auto g = [&](double u) {
        const double v = phi(u) - shift;
        return v > -745.0 ? std::exp(v) : 0.0;
    };
    Result r = integrate(g, w.u_lo, w.u_hi, rel_tol, 0.0, 4000);
    w.evaluations += r.evaluations;
    w.converged = r.converged && r.value > 0.0;
    w.log_value = r.value > 0.0 ? shift + std::log(r.value)
                                : -std::numeric_limits<double>::infinity();
    return w;
}

// integral_0^inf g(x) exp(log_pdf(x)) dx for a (near-)normalized log_pdf.
// g may change sign; the window is located from the magnitude log|g| + lp.
template <class LogF, class G>
Result expectation_positive(LogF&& log_pdf, G&& g, double rel_tol = 1e-9, double drop = 60.0) {
    auto logmag = [&](double u) {
        const double x = std::exp(u);
        const double gm = std::fabs(g(x));
        return gm > 0.0 ? log_pdf(x) + u + std::log(gm)
                        : -std::numeric_limits<double>::infinity();
    };
    LogResult w = detail::find_window(logmag, drop, -745.0, 709.0);
    Result res;
    res.evaluations = w.evaluations;
    if (w.divergent) {
        res.converged = false;
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    if (!std::isfinite(w.log_value)) {
        res.converged = true;
        return res;
    }
    const double shift = w.log_value;
    auto integrand = [&](double u) {
        const double x = std::exp(u);
        const double lp = log_pdf(x) + u - shift;
        return lp > -745.0 ? g(x) * std::exp(lp) : 0.0;
    };
    // absolute tolerance against an upper bound for the total variation so
    // that cancellation cannot stall the refinement loop
    const double abs_tol = rel_tol * (w.u_hi - w.u_lo);
    Result r = integrate(integrand, w.u_lo, w.u_hi, rel_tol, abs_tol, 4000);
    res.value = r.value * std::exp(shift);
    res.abs_error = r.abs_error * std::exp(shift);
    res.evaluations += r.evaluations;
    res.converged = r.converged;
    return res;
}

}  // namespace gigmix::quad
