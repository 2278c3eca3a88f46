#ifndef FRTM_REARRANGEMENT_HPP
#define FRTM_REARRANGEMENT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "frtm/grid.hpp"
#include "frtm/spectral.hpp"

namespace frtm {

/** A GridFunction known to be nonnegative, even (up to the unmirrored -L
 *  node), and nonincreasing in |x|. */
struct RearrangedFunction {
    GridFunction fn;
};

namespace detail {

/** Node indices ordered by |x_k| ascending, ties by node index ascending.
 *  On a uniform grid this is where the sorted sample magnitudes land. */
inline std::vector<std::size_t> symmetric_node_order(const Grid& grid) {
    std::vector<std::size_t> order(grid.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&grid](std::size_t a, std::size_t b) {
        return std::abs(grid.node(a)) < std::abs(grid.node(b));
    });
    return order;
}

} // namespace detail

/** Discrete symmetric decreasing rearrangement: the sample magnitudes,
 *  sorted descending, are assigned to nodes by |x| ascending. The multiset
 *  of samples is preserved exactly, so any uniform-weight integral of a
 *  function of |u| is invariant. */
inline RearrangedFunction rearrange(const GridFunction& f) {
    std::vector<double> mags(f.values.size());
    for (std::size_t k = 0; k < f.values.size(); ++k) mags[k] = std::abs(f.values[k]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    const auto order = detail::symmetric_node_order(f.grid);
    GridFunction out(f.grid);
    for (std::size_t r = 0; r < order.size(); ++r) out.values[order[r]] = mags[r];
    return RearrangedFunction{std::move(out)};
}

/** Both sides of the equimeasurability identity \int F(u*) = \int F(|u|)
 *  for a nonnegative monotone F with F(0) = 0. Equal to machine precision:
 *  the rearrangement is a node permutation under uniform weights. */
inline std::pair<double, double> equimeasurability_check(
    const GridFunction& f, const std::function<double(double)>& monotone_map) {
    const auto star = rearrange(f);
    const double h = f.grid.spacing();
    double lhs = 0.0, rhs = 0.0;
    for (double v : star.fn.values) lhs += monotone_map(v);
    for (double v : f.values) rhs += monotone_map(std::abs(v));
    return {lhs * h, rhs * h};
}

/** seminorm(u) - seminorm(u*); nonnegative up to discretization error
 *  (Polya-Szego). */
inline double polya_szego_deficit(const GridFunction& f) {
    return seminorm_fourier_sq(f) - seminorm_fourier_sq(rearrange(f).fn);
}

/** Worst-case margin of the radial decay bound u^2(x) <= ||u||_2^2/(2|x|)
 *  over all nonzero nodes. */
inline double radial_bound_check(const RearrangedFunction& f) {
    const double b = l2_norm_sq(f.fn);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < f.fn.grid.n; ++k) {
        const double x = std::abs(f.fn.grid.node(k));
        if (x == 0.0) continue;
        margin = std::min(margin, b / (2.0 * x) - f.fn.values[k] * f.fn.values[k]);
    }
    return margin;
}

/** Two-bump fixture psi(x - s) + psi(x + s); the classical witness that
 *  evenness alone gives no compactness. Supports must be disjoint and
 *  inside the grid. */
inline GridFunction strauss_fixture(const Grid& grid, double n_shift, const Profile& psi,
                                    double psi_support_half_width = 1.0) {
    if (n_shift < psi_support_half_width)
        throw std::invalid_argument("strauss_fixture: bumps overlap");
    if (n_shift + psi_support_half_width > grid.half_width)
        throw std::invalid_argument("strauss_fixture: bump leaves the grid");
    GridFunction out(grid);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.node(k);
        out.values[k] = psi(x - n_shift) + psi(x + n_shift);
    }
    return out;
}

} // namespace frtm

#endif
