#ifndef FRTM_MOSER_HPP
#define FRTM_MOSER_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "frtm/functionals.hpp"
#include "frtm/grid.hpp"
#include "frtm/spectral.hpp"

namespace frtm {

/** Parameter of the truncated-logarithm Moser profile. T = log(1/eps). */
struct MoserParam {
    double epsilon;

    explicit MoserParam(double eps) : epsilon(eps) {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("MoserParam: epsilon must be in (0, 1)");
    }
    double log_inv() const { return std::log(1.0 / epsilon); }
};

/** Closed-form Moser profile: sqrt(T) on |x| < eps, log(1/|x|)/sqrt(T) on
 *  eps <= |x| < 1, zero beyond. */
inline Profile moser_profile(const MoserParam& p) {
    const double eps = p.epsilon;
    const double sqrt_t = std::sqrt(p.log_inv());
    return Profile{"moser(" + std::to_string(eps) + ")", [eps, sqrt_t](double x) {
                       const double a = std::abs(x);
                       if (a < eps) return sqrt_t;
                       if (a < 1.0) return std::log(1.0 / a) / sqrt_t;
                       return 0.0;
                   }};
}

inline void require_resolves(const MoserParam& p, const Grid& grid) {
    if (grid.spacing() > p.epsilon / 4.0)
        throw resolution_error("moser: grid spacing exceeds epsilon/4");
    if (grid.half_width < 2.0)
        throw resolution_error("moser: grid must cover [-2, 2]");
}

inline GridFunction moser_function(const MoserParam& p, const Grid& grid) {
    require_resolves(p, grid);
    return sample(grid, moser_profile(p));
}

/** Closed form of ||u_eps||^2_{L^2}: 2 eps T + (2/T)(2 - e^{-T}(T^2+2T+2)),
 *  T = log(1/eps). O(1/T) as eps -> 0. */
inline double moser_l2_sq_exact(const MoserParam& p) {
    const double t = p.log_inv();
    return 2.0 * p.epsilon * t +
           (2.0 / t) * (2.0 - std::exp(-t) * (t * t + 2.0 * t + 2.0));
}

/** Numerical seminorm (spectral path) of the sampled Moser function. */
inline double moser_seminorm_sq(const MoserParam& p, const Grid& grid) {
    return seminorm_fourier_sq(moser_function(p, grid));
}

/** Lower bound for A(alpha) from the Moser family: eps is picked as the
 *  geometric midpoint of the window e^{-2/(1-alpha/pi)} .. e^{-1/(1-alpha/pi)}
 *  and A(alpha) is tested with v = u_eps / ||(-Delta)^{1/4} u_eps||. */
inline double asymptotic_lower_bound(const Exponent& e, const Grid& grid) {
    if (!e.subcritical())
        throw std::invalid_argument("asymptotic_lower_bound: requires alpha < pi");
    const double t = 1.5 / (1.0 - e.alpha / std::numbers::pi);
    const MoserParam p(std::exp(-t));
    GridFunction u = moser_function(p, grid); // throws if alpha too close to pi for grid
    const double s = std::sqrt(seminorm_fourier_sq(u));
    for (double& v : u.values) v /= s;
    return evaluate({FunctionalKind::AdachiTanaka, e}, u).value;
}

struct BlowupRow {
    double epsilon = 0.0;
    double log_inv = 0.0;
    double l2_exact = 0.0;
    double l2_numeric = 0.0;
    double seminorm = 0.0;
    double ratio = 0.0;   // tested Adachi-Tanaka ratio at alpha
    bool overflow = false; // ratio diverged past the e^700 guard
};

/** Tests the Adachi-Tanaka ratio at alpha (default: the critical pi) with
 *  normalized Moser functions. Overflow rows are kept and flagged; the
 *  divergence is the finding. */
inline std::vector<BlowupRow> critical_blowup_scan(
    const std::vector<MoserParam>& epsilons, const Grid& grid,
    const Exponent& e = Exponent(std::numbers::pi)) {
    std::vector<BlowupRow> rows;
    rows.reserve(epsilons.size());
    for (const auto& p : epsilons) {
        BlowupRow row;
        row.epsilon = p.epsilon;
        row.log_inv = p.log_inv();
        row.l2_exact = moser_l2_sq_exact(p);
        GridFunction u = moser_function(p, grid);
        row.l2_numeric = l2_norm_sq(u);
        row.seminorm = seminorm_fourier_sq(u);
        const double s = std::sqrt(row.seminorm);
        for (double& v : u.values) v /= s;
        try {
            row.ratio = evaluate({FunctionalKind::AdachiTanaka, e}, u).value;
        } catch (const overflow_error&) {
            row.ratio = std::numeric_limits<double>::infinity();
            row.overflow = true;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace frtm

#endif
