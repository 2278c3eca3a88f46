#ifndef FRTM_OPTIMIZE_HPP
#define FRTM_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "frtm/functionals.hpp"
#include "frtm/grid.hpp"
#include "frtm/moser.hpp"
#include "frtm/rearrangement.hpp"
#include "frtm/spectral.hpp"

namespace frtm {

struct BacktrackRule {
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_increase = 1e-4;
    std::size_t max_backtracks = 60;
};

struct MaximizeConfig {
    Exponent alpha;
    Grid grid;
    std::size_t max_iters = 5000;
    double tol = 1e-8; // relative objective change defining a stall
    BacktrackRule step_rule;
    std::vector<Profile> starts;
    std::size_t rearrange_every = 20;

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("MaximizeConfig: tol must be positive");
        if (max_iters < 1) throw std::invalid_argument("MaximizeConfig: max_iters must be >= 1");
        if (starts.empty()) throw std::invalid_argument("MaximizeConfig: needs at least one start");
    }
};

/** Default multistart family: three Gaussian widths plus two concentration
 *  profiles, covering the flat and peaked ends the maximizers interpolate
 *  between. */
inline std::vector<Profile> default_starts() {
    return {gaussian(0.25), gaussian(1.0), gaussian(4.0),
            moser_profile(MoserParam(std::exp(-2.0))),
            moser_profile(MoserParam(std::exp(-4.0)))};
}

enum class MaximizeStatus { converged, iter_cap, overflow };

inline std::string to_string(MaximizeStatus s) {
    switch (s) {
        case MaximizeStatus::converged: return "converged";
        case MaximizeStatus::iter_cap: return "iter_cap";
        case MaximizeStatus::overflow: return "overflow";
    }
    return "?";
}

struct IterationRecord {
    std::size_t iteration = 0;
    double objective = 0.0;
    double seminorm_residual = 0.0;
    double l2_residual = 0.0;
};

struct StartTrace {
    std::size_t start_index = 0;
    std::string start_name;
    MaximizeStatus status = MaximizeStatus::iter_cap;
    std::vector<IterationRecord> iterations;
    double final_objective = 0.0;
};

struct MaximizerReport {
    double best_value = 0.0;
    GridFunction best_function;
    std::map<std::string, double> constraint_residuals;
    std::vector<StartTrace> traces;
    MaximizeStatus status = MaximizeStatus::iter_cap;
};

/** L^2-metric gradient. For the ratio functionals (numerator over ||u||_2^2)
 *  this is the full quotient-rule gradient; for the constrained-numerator
 *  kinds it is the gradient of the numerator alone (constraints are the
 *  caller's business). */
inline GridFunction functional_gradient(const GridFunction& f, const FunctionalSpec& spec) {
    const double b = l2_norm_sq(f);
    if (b == 0.0) throw std::invalid_argument("functional_gradient: zero function");
    const double al = spec.exponent.alpha;
    const bool weighted = spec.kind == FunctionalKind::DongLuE ||
                          spec.kind == FunctionalKind::DongLuF;
    const bool ratio_kind = spec.kind == FunctionalKind::AdachiTanaka ||
                            spec.kind == FunctionalKind::DongLuE;

    GridFunction g(f.grid);
    for (std::size_t k = 0; k < f.grid.n; ++k) {
        const double u = f.values[k];
        const double e = std::exp(guarded_exp_arg(al, u));
        // d/du of e^{al u^2}-1 resp. u^2 e^{al u^2}
        g.values[k] = weighted ? 2.0 * u * (1.0 + al * u * u) * e : 2.0 * al * u * e;
    }
    if (ratio_kind) {
        const double r = evaluate(spec, f).value;
        for (std::size_t k = 0; k < f.grid.n; ++k)
            g.values[k] = (g.values[k] - r * 2.0 * f.values[k]) / b;
    }
    return g;
}

inline double directional_derivative(const GridFunction& f, const FunctionalSpec& spec,
                                     const GridFunction& direction) {
    const GridFunction g = functional_gradient(f, spec);
    double s = 0.0;
    for (std::size_t k = 0; k < f.grid.n; ++k) s += g.values[k] * direction.values[k];
    return s * f.grid.spacing();
}

namespace detail {

// feasibility projection: amplitude-clamp the seminorm to 1, then restore
// ||u||_2 = 1 by the L^2-preserving dilation u(bx); the dilation leaves the
// seminorm invariant in the continuum, so the two stages do not fight
inline GridFunction project_step(const GridFunction& f) {
    GridFunction u = f;
    const double s = seminorm_fourier_sq(u);
    if (s > 1.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (double& v : u.values) v *= inv;
    }
    const double b = l2_norm_sq(u);
    if (std::abs(b - 1.0) > 1e-15) u = dilate(u, b);
    return u;
}

inline double ratio_objective(const GridFunction& u, const Exponent& e,
                              FunctionalKind kind) {
    const double b = l2_norm_sq(u);
    const double num = (kind == FunctionalKind::DongLuE) ? weighted_tm_integral(u, e)
                                                         : tm_integral(u, e);
    return num / b;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

} // namespace detail

/** Exact-feasibility polish: alternate the L^2-restoring dilation and the
 *  seminorm amplitude clamp. The dilation's interpolation error scales with
 *  |lambda - 1|, so the loop contracts; a handful of rounds reaches 1e-10. */
inline GridFunction project_to_constraints(const GridFunction& f, std::size_t rounds = 30) {
    GridFunction v = f;
    for (std::size_t i = 0; i < rounds; ++i) {
        const double b = l2_norm_sq(v);
        if (std::abs(b - 1.0) > 1e-14) v = dilate(v, b);
        const double s = seminorm_fourier_sq(v);
        if (s > 1.0) {
            const double inv = 1.0 / std::sqrt(s);
            for (double& x : v.values) x *= inv;
        }
        if (std::abs(l2_norm_sq(v) - 1.0) < 1e-10 && seminorm_fourier_sq(v) <= 1.0 + 1e-10)
            break;
    }
    return v;
}

/** Projected-gradient ascent for the exponential-integral functionals on the
 *  set { seminorm <= 1, ||u||_2 = 1 }. The iterate objective is the
 *  scale-free ratio numerator/||u||_2^2 (equal to the constrained value on
 *  the feasible set); the gradient is projected onto the tangent of the L^2
 *  sphere and, when the seminorm constraint is active, onto the tangent of
 *  the seminorm ball, so the per-step feasibility projection costs O(t^2).
 *  Rearrangement steps are taken periodically and kept only when not worse. */
inline MaximizerReport maximize(const FunctionalSpec& spec, const MaximizeConfig& config) {
    if (spec.kind != FunctionalKind::AdachiTanakaNormalized &&
        spec.kind != FunctionalKind::DongLuE)
        throw std::invalid_argument("maximize: supported kinds are the normalized "
                                    "exponential ratio and the weighted ratio");
    if (!config.alpha.subcritical())
        throw std::invalid_argument("maximize: requires alpha < pi");
    config.validate();

    const Exponent& al = config.alpha;
    const FunctionalKind obj_kind = spec.kind == FunctionalKind::DongLuE
                                        ? FunctionalKind::DongLuE
                                        : FunctionalKind::AdachiTanaka;
    const auto objective = [&](const GridFunction& u) {
        return detail::ratio_objective(u, al, obj_kind);
    };

    MaximizerReport report;
    bool any_ok = false;
    GridFunction best;
    double best_r = -std::numeric_limits<double>::infinity();

    for (std::size_t si = 0; si < config.starts.size(); ++si) {
        StartTrace trace;
        trace.start_index = si;
        trace.start_name = config.starts[si].name;
        try {
            GridFunction u = detail::project_step(sample(config.grid, config.starts[si]));
            double r = objective(u);
            double t = config.step_rule.initial_step;
            std::size_t stall = 0;
            trace.status = MaximizeStatus::iter_cap;

            for (std::size_t it = 0; it < config.max_iters; ++it) {
                const double b = l2_norm_sq(u);
                GridFunction g(u.grid);
                for (std::size_t k = 0; k < u.grid.n; ++k) {
                    const double v = u.values[k];
                    const double e = std::exp(guarded_exp_arg(al.alpha, v));
                    const double num_grad = obj_kind == FunctionalKind::DongLuE
                                                ? 2.0 * v * (1.0 + al.alpha * v * v) * e
                                                : 2.0 * al.alpha * v * e;
                    g.values[k] = (num_grad - r * 2.0 * v) / b;
                }
                // tangent to the L^2 sphere
                const double uu = detail::dot(u.values, u.values);
                const double ug = detail::dot(u.values, g.values);
                for (std::size_t k = 0; k < g.values.size(); ++k)
                    g.values[k] -= ug / uu * u.values[k];
                // tangent to the seminorm ball when the constraint is active
                if (seminorm_fourier_sq(u) > 1.0 - 1e-6) {
                    GridFunction w = seminorm_form_apply(u);
                    const double uw = detail::dot(u.values, w.values);
                    for (std::size_t k = 0; k < w.values.size(); ++k)
                        w.values[k] -= uw / uu * u.values[k];
                    const double ww = detail::dot(w.values, w.values);
                    if (ww > 0.0) {
                        const double wg = detail::dot(w.values, g.values);
                        for (std::size_t k = 0; k < g.values.size(); ++k)
                            g.values[k] -= wg / ww * w.values[k];
                    }
                }
                const double gn = detail::dot(g.values, g.values) * u.grid.spacing();
                if (gn < 1e-30) {
                    trace.status = MaximizeStatus::converged;
                    break;
                }

                bool accepted = false;
                double tt = t;
                double r_prev = r;
                for (std::size_t bt = 0; bt < config.step_rule.max_backtracks; ++bt) {
                    GridFunction ut(u.grid);
                    for (std::size_t k = 0; k < u.grid.n; ++k)
                        ut.values[k] = u.values[k] + tt * g.values[k];
                    ut = detail::project_step(ut);
                    const double rt = objective(ut);
                    if (rt >= r + config.step_rule.sufficient_increase * tt * gn) {
                        r_prev = r;
                        r = rt;
                        u = std::move(ut);
                        t = std::min(tt * 2.0, 1e6);
                        accepted = true;
                        break;
                    }
                    tt *= config.step_rule.shrink;
                }
                if (!accepted) {
                    trace.status = MaximizeStatus::converged;
                    break;
                }

                if (config.rearrange_every && (it + 1) % config.rearrange_every == 0) {
                    GridFunction ur = rearrange(u).fn;
                    const double rr = objective(ur);
                    if (rr >= r) {
                        u = std::move(ur);
                        r = rr;
                    }
                }

                trace.iterations.push_back(
                    {it, r, std::sqrt(seminorm_fourier_sq(u)) - 1.0,
                     std::sqrt(l2_norm_sq(u)) - 1.0});

                if (std::abs(r - r_prev) < config.tol * std::max(std::abs(r), 1.0)) {
                    if (++stall >= 5) {
                        trace.status = MaximizeStatus::converged;
                        break;
                    }
                } else {
                    stall = 0;
                }
            }
            trace.final_objective = r;
            any_ok = true;
            if (r > best_r) {
                best_r = r;
                best = u;
            }
        } catch (const overflow_error&) {
            trace.status = MaximizeStatus::overflow;
            trace.final_objective = std::numeric_limits<double>::quiet_NaN();
        }
        report.traces.push_back(std::move(trace));
    }

    if (!any_ok)
        throw overflow_error("maximize: every start overflowed; alpha too close to "
                             "critical for this grid");

    report.best_function = project_to_constraints(best);
    const FunctionalValue fv = evaluate(spec, report.best_function);
    report.best_value = fv.value;
    report.constraint_residuals = fv.constraint_residuals;
    report.status = MaximizeStatus::overflow;
    for (const auto& tr : report.traces) {
        if (tr.status == MaximizeStatus::converged) report.status = MaximizeStatus::converged;
    }
    if (report.status != MaximizeStatus::converged)
        for (const auto& tr : report.traces)
            if (tr.status == MaximizeStatus::iter_cap) report.status = MaximizeStatus::iter_cap;
    return report;
}

/** ||u||_q / (q^{1/2} ||(-Delta)^{1/4}u||^{1-2/q} ||u||_2^{2/q}). */
inline double gn_ratio(const GridFunction& f, double q) {
    if (q < 2.0) throw std::invalid_argument("gn_ratio: q must be >= 2");
    const double lq = lp_norm(f, q);
    if (lq == 0.0) throw std::invalid_argument("gn_ratio: zero function");
    const double semi = std::sqrt(seminorm_fourier_sq(f));
    const double l2 = std::sqrt(l2_norm_sq(f));
    return lq / (std::sqrt(q) * std::pow(semi, 1.0 - 2.0 / q) * std::pow(l2, 2.0 / q));
}

/** Reference value (2 pi e)^{-1/2} the large-q ratio suprema approach. */
inline double gn_beta0_reference() {
    return 1.0 / std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
}

/** Smallest C consistent with ||u||_p^p <= C p^{p/2} s^{p-2} ||u||_2^2
 *  (s the seminorm) over the given fixtures and even integers p. */
inline double ogawa_ozawa_constant(const std::vector<GridFunction>& fixtures,
                                   const std::vector<int>& ps) {
    if (fixtures.empty() || ps.empty())
        throw std::invalid_argument("ogawa_ozawa_constant: empty input");
    double c = 0.0;
    for (const auto& f : fixtures) {
        const double l2sq = l2_norm_sq(f);
        if (l2sq == 0.0) throw std::invalid_argument("ogawa_ozawa_constant: zero fixture");
        const double semi = std::sqrt(seminorm_fourier_sq(f));
        for (int p : ps) {
            if (p < 4 || p % 2 != 0)
                throw std::invalid_argument("ogawa_ozawa_constant: p must be even and >= 4");
            const double pd = static_cast<double>(p);
            const double lp = lp_norm(f, pd);
            c = std::max(c, std::pow(lp, pd) /
                                (std::pow(pd, pd / 2.0) * std::pow(semi, pd - 2.0) * l2sq));
        }
    }
    return c;
}

/** Point on the normalized dilation orbit: the base function on the unit
 *  full-norm sphere plus the scalars the derivative series consumes. */
struct OrbitPoint {
    double tau = 1.0;
    GridFunction v;
    double a = 0.0;                // seminorm^2
    double b = 0.0;                // L^2 norm^2
    std::vector<double> moments;   // moments[j-1] = ||v||_{2j}^{2j}
};

inline OrbitPoint make_orbit_point(const GridFunction& v, std::size_t j_max, double tau = 1.0) {
    OrbitPoint p;
    p.tau = tau;
    p.v = v;
    p.a = seminorm_fourier_sq(v);
    p.b = l2_norm_sq(v);
    if (std::abs(p.a + p.b - 1.0) > 1e-6)
        throw std::invalid_argument("orbit: base function must sit on the unit full-norm sphere");
    p.moments.resize(j_max);
    const double h = v.grid.spacing();
    for (std::size_t j = 1; j <= j_max; ++j) {
        double s = 0.0;
        for (double x : v.values) s += std::pow(x * x, static_cast<double>(j));
        p.moments[j - 1] = s * h;
    }
    return p;
}

/** d/dtau at tau=1 of the exponential integral along the orbit
 *  w_tau = sqrt(tau) v(tau x) / ||v_tau||: the series
 *  sum_j (alpha^j/j!) c_j (-a + (j-1) b) with c_j = ||v||_{2j}^{2j}, using
 *  a + b = 1. Truncation is certified: the tail is bounded by the sup-norm
 *  moment decay and must fall below 1e-10 of the partial sum. */
inline double orbit_derivative_series(const GridFunction& v, const Exponent& alpha,
                                      std::size_t j_max = 60) {
    const OrbitPoint p = make_orbit_point(v, j_max);
    double sum = 0.0;
    double factor = 1.0; // alpha^j / j!
    for (std::size_t j = 1; j <= j_max; ++j) {
        factor *= alpha.alpha / static_cast<double>(j);
        sum += factor * p.moments[j - 1] *
               (-p.a + (static_cast<double>(j) - 1.0) * p.b);
    }

    // tail bound: c_j <= m^{2j-2} b with m = sup|v|, terms then decay faster
    // than a geometric series with ratio alpha m^2 / (j+1)
    const double m = sup_norm(v);
    const double m2 = m * m;
    const double jn = static_cast<double>(j_max) + 1.0;
    double first = factor * (alpha.alpha / jn) * std::pow(m2, jn - 1.0) * p.b *
                   (p.a + (jn - 1.0) * p.b);
    const double ratio = alpha.alpha * m2 * 2.0 / (jn + 1.0);
    if (ratio >= 1.0)
        throw std::invalid_argument("orbit_derivative_series: tail bound unavailable at j_max");
    const double tail = std::abs(first) / (1.0 - ratio);
    if (tail > 1e-10 * std::max(std::abs(sum), 1e-300))
        throw std::invalid_argument("orbit_derivative_series: tail bound exceeds 1e-10 of sum");
    return sum;
}

/** Central finite difference of J(w_tau) across tau = 1 +- h_tau. The orbit
 *  value is computed by change of variables,
 *      J(w_tau) = (1/tau) \int (e^{alpha tau v^2/(b + tau a)} - 1) dx,
 *  which is exact at sample level, so the difference isolates the tau
 *  derivative instead of interpolation noise. */
inline double orbit_derivative_fd(const GridFunction& v, const Exponent& alpha,
                                  double h_tau = 0.01) {
    if (!(h_tau > 0.0 && h_tau <= 0.1))
        throw std::invalid_argument("orbit_derivative_fd: h_tau must be in (0, 0.1]");
    const double a = seminorm_fourier_sq(v);
    const double b = l2_norm_sq(v);
    if (std::abs(a + b - 1.0) > 1e-6)
        throw std::invalid_argument("orbit: base function must sit on the unit full-norm sphere");
    const double h = v.grid.spacing();
    const auto value_at = [&](double tau) {
        double s = 0.0;
        for (double x : v.values)
            s += std::expm1(alpha.alpha * tau * x * x / (b + tau * a));
        return s * h / tau;
    };
    return (value_at(1.0 + h_tau) - value_at(1.0 - h_tau)) / (2.0 * h_tau);
}

} // namespace frtm

#endif
