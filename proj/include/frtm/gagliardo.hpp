#ifndef FRTM_GAGLIARDO_HPP
#define FRTM_GAGLIARDO_HPP

#include <cmath>
#include <numbers>

#include "frtm/grid.hpp"

namespace frtm {

/** (1/2pi) \iint |u(x)-u(y)|^2 / |x-y|^2 dx dy, the Gagliardo route to the
 *  same seminorm as seminorm_fourier_sq.
 *
 *  O(n^2) midpoint sum over node pairs, plus:
 *    - the diagonal band |x-y| < h, where the integrand of the piecewise
 *      linear interpolant equals the squared local slope: contributes
 *      2 h^2 sum_k slope_k^2;
 *    - the exterior tails (y outside [-L, L), where u vanishes), integrated
 *      analytically per node.
 *
 *  Sequential summation order is fixed, so repeated runs are bit-identical. */
inline double seminorm_gagliardo_sq(const GridFunction& f) {
    const auto n = f.grid.n;
    const double h = f.grid.spacing();
    const double L = f.grid.half_width;
    const auto& u = f.values;

    double pairs = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        const double inv_d2 = 1.0 / (static_cast<double>(m) * h * static_cast<double>(m) * h);
        double lag = 0.0;
        for (std::size_t k = 0; k + m < n; ++k) {
            const double d = u[k + m] - u[k];
            lag += d * d;
        }
        pairs += 2.0 * lag * inv_d2; // both orders (x,y), (y,x)
    }
    pairs *= h * h;

    double band = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double s = (u[k + 1] - u[k]) / h;
        band += s * s;
    }
    band *= 2.0 * h * h;

    double tails = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = f.grid.node(k);
        const double right = std::max(L - x, 0.5 * h);
        const double left = std::max(L + x, 0.5 * h);
        tails += u[k] * u[k] * (1.0 / right + 1.0 / left);
    }
    tails *= 2.0 * h; // both orders

    return (pairs + band + tails) / (2.0 * std::numbers::pi);
}

} // namespace frtm

#endif
