#include "gigmix/maxent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gigmix/errors.hpp"
#include "gigmix/quadrature.hpp"
#include "gigmix/special.hpp"

namespace gigmix {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PriorSpec PriorSpec::uniform() { return PriorSpec{}; }

PriorSpec PriorSpec::tabulated(std::vector<double> x, std::vector<double> q) {
    if (x.size() < 2 || x.size() != q.size()) {
        throw ValidationError("tabulated prior needs >= 2 (x, q) knots");
    }
    bool any_positive = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || x[i] < 0.0) {
            throw ValidationError("tabulated prior knots must satisfy x >= 0");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw ValidationError("tabulated prior knots must be strictly increasing");
        }
        if (!std::isfinite(q[i]) || q[i] < 0.0) {
            throw ValidationError("tabulated prior values must be nonnegative");
        }
        any_positive = any_positive || q[i] > 0.0;
    }
    if (!any_positive) throw ValidationError("tabulated prior is identically zero");
    PriorSpec p;
    p.kind_ = Kind::Tabulated;
    p.x_ = std::move(x);
    p.q_ = std::move(q);
    p.log_q_.resize(p.q_.size());
    for (std::size_t i = 0; i < p.q_.size(); ++i) {
        p.log_q_[i] = p.q_[i] > 0.0 ? std::log(p.q_[i]) : -kInf;
    }
    return p;
}

double PriorSpec::log_q(double x) const {
    if (kind_ == Kind::UniformImproper) return 0.0;
    if (!(x >= x_.front()) || !(x <= x_.back())) return -kInf;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
    if (q_[i] > 0.0 && q_[i + 1] > 0.0) {
        // log-linear between positive knots
        return log_q_[i] + t * (log_q_[i + 1] - log_q_[i]);
    }
    // linear when a knot value is zero
    const double q = q_[i] + t * (q_[i + 1] - q_[i]);
    return q > 0.0 ? std::log(q) : -kInf;
}

bool PriorSpec::in_support(double x) const {
    if (kind_ == Kind::UniformImproper) return x > 0.0;
    return x >= x_.front() && x <= x_.back();
}

double PriorSpec::support_lo() const {
    return kind_ == Kind::UniformImproper ? 0.0 : x_.front();
}

double PriorSpec::support_hi() const {
    return kind_ == Kind::UniformImproper ? kInf : x_.back();
}

void ConstraintSet::validate() const {
    if (!target_mu && !target_log_gamma && !target_inv_eta) {
        throw ValidationError("at least one mean target is required");
    }
    if (target_mu && (!(*target_mu > 0.0) || !std::isfinite(*target_mu))) {
        throw ValidationError("target arithmetic mean must be positive");
    }
    if (target_inv_eta && (!(*target_inv_eta > 0.0) || !std::isfinite(*target_inv_eta))) {
        throw ValidationError("target reciprocal harmonic mean must be positive");
    }
    if (target_log_gamma && !std::isfinite(*target_log_gamma)) {
        throw ValidationError("target log geometric mean must be finite");
    }
    // Jensen: eta < gamma < mu strictly (a point mass is the only equality case)
    constexpr double tol = 1e-12;
    const double log_mu = target_mu ? std::log(*target_mu) : kInf;
    const double log_eta = target_inv_eta ? -std::log(*target_inv_eta) : -kInf;
    const double log_gamma = target_log_gamma ? *target_log_gamma : kInf;
    if (target_mu && target_log_gamma && !(log_gamma < log_mu - tol)) {
        throw ValidationError(
            "infeasible targets: geometric mean must be strictly below arithmetic mean");
    }
    if (target_log_gamma && target_inv_eta && !(log_eta < log_gamma - tol)) {
        throw ValidationError(
            "infeasible targets: harmonic mean must be strictly below geometric mean");
    }
    if (target_mu && target_inv_eta && !(log_eta < log_mu - tol)) {
        throw ValidationError(
            "infeasible targets: harmonic mean must be strictly below arithmetic mean");
    }
}

namespace {

double log_partition_quadrature(const PriorSpec& prior, double l1, double l2, double l3) {
    auto lf = [&](double x) {
        const double lq = prior.log_q(x);
        if (lq == -kInf) return -kInf;
        return lq + (l3 - 1.0) * std::log(x) - l1 * x - l2 / x;
    };
    quad::LogResult r = quad::log_integral_positive(lf, 1e-11);
    if (r.divergent) {
        throw NonNormalizableError("partition integral diverges for these multipliers");
    }
    if (!r.converged) {
        throw NumericalError("partition integral failed to converge");
    }
    return r.log_value;
}

}  // namespace

double log_partition(const PriorSpec& prior, double lambda1, double lambda2, double lambda3) {
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(lambda3)) {
        throw DomainError("log_partition: non-finite multipliers");
    }
    if (prior.is_uniform()) {
        if (lambda1 < 0.0 || lambda2 < 0.0) {
            throw NonNormalizableError("uniform prior requires lambda1 >= 0 and lambda2 >= 0");
        }
        if (lambda1 > 0.0 && lambda2 > 0.0) {
            const double beta = 2.0 * std::sqrt(lambda1 * lambda2);
            if (beta <= 700.0 && beta >= 1e-6 && std::fabs(lambda3) <= 100.0) {
                return std::log(2.0) + 0.5 * lambda3 * (std::log(lambda2) - std::log(lambda1)) +
                       log_bessel_k(lambda3, beta);
            }
            return log_partition_quadrature(prior, lambda1, lambda2, lambda3);
        }
        if (lambda1 > 0.0 && lambda2 == 0.0) {
            if (!(lambda3 > 0.0)) {
                throw NonNormalizableError("gamma-type multipliers require lambda3 > 0");
            }
            return log_gamma_fn(lambda3) - lambda3 * std::log(lambda1);
        }
        if (lambda1 == 0.0 && lambda2 > 0.0) {
            if (!(lambda3 < 0.0)) {
                throw NonNormalizableError("inverse-gamma-type multipliers require lambda3 < 0");
            }
            return log_gamma_fn(-lambda3) + lambda3 * std::log(lambda2);
        }
        throw NonNormalizableError("x^(lambda3-1) alone is not normalizable on (0, inf)");
    }
    return log_partition_quadrature(prior, lambda1, lambda2, lambda3);
}

double maxent_log_pdf(const PriorSpec& prior, const Multipliers& m, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("maxent_log_pdf: x must be positive");
    if (!prior.in_support(x)) {
        throw DomainError("maxent_log_pdf: x outside tabulated prior support");
    }
    return prior.log_q(x) - m.lambda0 + (m.lambda3 - 1.0) * std::log(x) - m.lambda1 * x -
           m.lambda2 / x;
}

namespace {

struct Moments {
    double m_x = 0.0, m_invx = 0.0, m_lnx = 0.0;
    double v_xx = 0.0, v_ii = 0.0, v_ll = 0.0;   // variances of x, 1/x, ln x
    double v_xi = 0.0, v_xl = 0.0, v_il = 0.0;   // covariances
    bool ok = false;
};

// moment integrals of the normalized maxent density for the active targets
Moments compute_moments(const PriorSpec& prior, double l0, double l1, double l2, double l3,
                        bool need_mu, bool need_eta, bool need_gamma) {
    auto lp = [&](double x) {
        const double lq = prior.log_q(x);
        if (lq == -kInf) return -kInf;
        return lq - l0 + (l3 - 1.0) * std::log(x) - l1 * x - l2 / x;
    };
    constexpr double tol = 1e-11;
    Moments mo;
    auto expect = [&](auto&& g, double& out) -> bool {
        quad::Result r = quad::expectation_positive(lp, g, tol);
        if (!r.converged || !std::isfinite(r.value)) return false;
        out = r.value;
        return true;
    };
    double e_x2 = 0.0, e_i2 = 0.0, e_l2 = 0.0, e_xl = 0.0, e_il = 0.0;
    if (need_mu) {
        if (!expect([](double x) { return x; }, mo.m_x)) return mo;
        if (!expect([](double x) { return x * x; }, e_x2)) return mo;
        mo.v_xx = e_x2 - mo.m_x * mo.m_x;
    }
    if (need_eta) {
        if (!expect([](double x) { return 1.0 / x; }, mo.m_invx)) return mo;
        if (!expect([](double x) { return 1.0 / (x * x); }, e_i2)) return mo;
        mo.v_ii = e_i2 - mo.m_invx * mo.m_invx;
    }
    if (need_gamma) {
        if (!expect([](double x) { return std::log(x); }, mo.m_lnx)) return mo;
        if (!expect([](double x) { const double l = std::log(x); return l * l; }, e_l2)) return mo;
        mo.v_ll = e_l2 - mo.m_lnx * mo.m_lnx;
    }
    if (need_mu && need_eta) mo.v_xi = 1.0 - mo.m_x * mo.m_invx;  // E[x * 1/x] = 1
    if (need_mu && need_gamma) {
        if (!expect([](double x) { return x * std::log(x); }, e_xl)) return mo;
        mo.v_xl = e_xl - mo.m_x * mo.m_lnx;
    }
    if (need_eta && need_gamma) {
        if (!expect([](double x) { return std::log(x) / x; }, e_il)) return mo;
        mo.v_il = e_il - mo.m_invx * mo.m_lnx;
    }
    mo.ok = true;
    return mo;
}

// solve the (at most 3x3) SPD system H d = -g by Cholesky with a ridge
bool solve_spd(std::array<std::array<double, 3>, 3> h, std::array<double, 3> g, int n,
               std::array<double, 3>& d) {
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += h[i][i];
    double ridge = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::array<std::array<double, 3>, 3> a = h;
        for (int i = 0; i < n; ++i) a[i][i] += ridge;
        std::array<std::array<double, 3>, 3> l{};
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = a[i][j];
                for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
                if (i == j) {
                    if (!(s > 0.0)) {
                        ok = false;
                        break;
                    }
                    l[i][i] = std::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        if (ok) {
            std::array<double, 3> y{};
            for (int i = 0; i < n; ++i) {
                double s = -g[i];
                for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
                y[i] = s / l[i][i];
            }
            for (int i = n - 1; i >= 0; --i) {
                double s = y[i];
                for (int k = i + 1; k < n; ++k) s -= l[k][i] * d[k];
                d[i] = s / l[i][i];
            }
            return true;
        }
        ridge = ridge == 0.0 ? 1e-12 * std::max(trace, 1.0) : ridge * 100.0;
    }
    return false;
}

}  // namespace

MaxEntSolution solve_multipliers(const PriorSpec& prior, const ConstraintSet& constraints,
                                 std::optional<Multipliers> init) {
    constraints.validate();
    const bool has_mu = constraints.target_mu.has_value();
    const bool has_eta = constraints.target_inv_eta.has_value();
    const bool has_gamma = constraints.target_log_gamma.has_value();
    const double t_mu = has_mu ? *constraints.target_mu : 0.0;
    const double t_ie = has_eta ? *constraints.target_inv_eta : 0.0;
    const double t_lg = has_gamma ? *constraints.target_log_gamma : 0.0;

    double l1, l2, l3;
    if (init) {
        l1 = has_mu ? init->lambda1 : 0.0;
        l2 = has_eta ? init->lambda2 : 0.0;
        l3 = has_gamma ? init->lambda3 : 1.0;
    } else {
        l1 = has_mu ? 1.0 / t_mu : 0.0;
        l2 = has_eta ? 0.5 / t_ie : 0.0;
        l3 = has_gamma ? (has_mu ? 1.0 : -2.0) : 1.0;
    }

    MaxEntSolution sol;
    double l0;
    try {
        l0 = log_partition(prior, l1, l2, l3);
    } catch (const NonNormalizableError&) {
        throw NonNormalizableError(
            "maxent problem is not normalizable for this prior and constraint set");
    }
    auto dual = [&](double z0, double a1, double a2, double a3) {
        return z0 + a1 * t_mu + a2 * t_ie - (a3 - 1.0) * t_lg;
    };
    double f_cur = dual(l0, l1, l2, l3);
    sol.dual_trace.push_back(f_cur);

    Moments mo = compute_moments(prior, l0, l1, l2, l3, has_mu, has_eta, has_gamma);
    if (!mo.ok) {
        throw NumericalError("maxent solver: moment integrals failed at the initial point");
    }

    int idx[3];
    int n = 0;
    if (has_mu) idx[n++] = 0;
    if (has_eta) idx[n++] = 1;
    if (has_gamma) idx[n++] = 2;

    const int max_iter = 50;
    for (int iter = 0; iter <= max_iter; ++iter) {
        sol.newton_iterations = iter;
        // relative constraint residuals
        double res = 0.0;
        if (has_mu) res = std::max(res, std::fabs(mo.m_x - t_mu) / std::fabs(t_mu));
        if (has_eta) res = std::max(res, std::fabs(mo.m_invx - t_ie) / std::fabs(t_ie));
        if (has_gamma) {
            res = std::max(res, std::fabs(mo.m_lnx - t_lg) / std::max(1.0, std::fabs(t_lg)));
        }
        sol.residual = res;
        if (res <= 1e-9) {
            sol.converged = true;
            break;
        }
        if (iter == max_iter) break;

        // active-coordinate gradient and Hessian of the dual
        const double full_g[3] = {t_mu - mo.m_x, t_ie - mo.m_invx, mo.m_lnx - t_lg};
        const double full_h[3][3] = {
            {mo.v_xx, mo.v_xi, -mo.v_xl},
            {mo.v_xi, mo.v_ii, -mo.v_il},
            {-mo.v_xl, -mo.v_il, mo.v_ll},
        };
        std::array<double, 3> g{};
        std::array<std::array<double, 3>, 3> h{};
        for (int i = 0; i < n; ++i) {
            g[i] = full_g[idx[i]];
            for (int j = 0; j < n; ++j) h[i][j] = full_h[idx[i]][idx[j]];
        }
        std::array<double, 3> d{};
        const bool have_newton = solve_spd(h, g, n, d);
        if (!have_newton) {
            double scale = 0.0;
            for (int i = 0; i < n; ++i) scale = std::max(scale, h[i][i]);
            for (int i = 0; i < n; ++i) d[i] = -g[i] / std::max(scale, 1e-12);
        }

        auto try_step = [&](const std::array<double, 3>& dir) -> bool {
            double gd = 0.0;
            for (int i = 0; i < n; ++i) gd += g[i] * dir[i];
            if (!(gd < 0.0)) return false;
            double s = 1.0;
            for (int back = 0; back < 60; ++back, s *= 0.5) {
                double cand[3] = {l1, l2, l3};
                for (int i = 0; i < n; ++i) cand[idx[i]] += s * dir[i];
                // active positive multipliers must stay strictly positive for
                // the uniform prior
                if (prior.is_uniform() &&
                    ((has_mu && !(cand[0] > 0.0)) || (has_eta && !(cand[1] > 0.0)))) {
                    continue;
                }
                double z0;
                try {
                    z0 = log_partition(prior, cand[0], cand[1], cand[2]);
                } catch (const Error&) {
                    continue;
                }
                const double f_new = dual(z0, cand[0], cand[1], cand[2]);
                if (!std::isfinite(f_new)) continue;
                if (f_new > f_cur + 1e-4 * s * gd) continue;
                Moments cand_mo = compute_moments(prior, z0, cand[0], cand[1], cand[2], has_mu,
                                                  has_eta, has_gamma);
                if (!cand_mo.ok) continue;
                l1 = cand[0];
                l2 = cand[1];
                l3 = cand[2];
                l0 = z0;
                f_cur = f_new;
                mo = cand_mo;
                sol.dual_trace.push_back(f_cur);
                return true;
            }
            return false;
        };

        bool moved = try_step(d);
        if (!moved && have_newton) {
            // fall back to a scaled gradient step
            std::array<double, 3> gd{};
            double scale = 0.0;
            for (int i = 0; i < n; ++i) scale = std::max(scale, h[i][i]);
            for (int i = 0; i < n; ++i) gd[i] = -g[i] / std::max(scale, 1e-12);
            moved = try_step(gd);
        }
        if (!moved) {
            throw NoSolutionError(
                "maxent solver stalled; targets appear infeasible for this prior");
        }
        if (std::fabs(l1) + std::fabs(l2) + std::fabs(l3) > 1e10) {
            throw NoSolutionError("maxent solver diverged; targets appear infeasible");
        }
    }
    if (!sol.converged) {
        throw NoSolutionError("maxent solver did not converge within 50 Newton iterations");
    }
    sol.multipliers = Multipliers{l0, l1, l2, l3};
    return sol;
}

}  // namespace gigmix
