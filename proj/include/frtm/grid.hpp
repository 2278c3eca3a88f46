#ifndef FRTM_GRID_HPP
#define FRTM_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frtm/errors.hpp"

namespace frtm {

/** Uniform truncation of the real line to [-L, L) with nodes x_k = -L + k*h,
 *  k = 0..n-1, h = 2L/n. The node -L has no mirror; functions are implicitly
 *  zero outside [-L, L), so plain h-weighted sums ARE the trapezoid rule for
 *  the zero-extended integrand. */
struct Grid {
    double half_width = 0.0; // L
    std::size_t n = 0;

    double spacing() const { return 2.0 * half_width / static_cast<double>(n); }
    double node(std::size_t k) const {
        return -half_width + spacing() * static_cast<double>(k);
    }
    bool operator==(const Grid& other) const {
        return half_width == other.half_width && n == other.n;
    }
};

inline Grid make_grid(double half_width, std::size_t n) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half_width must be positive");
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("make_grid: n must be even and >= 4");
    return Grid{half_width, n};
}

/** Real samples on a Grid; the discrete stand-in for a function on the line
 *  that vanishes outside [-L, L). */
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.n, 0.0) {}
    GridFunction(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n)
            throw std::invalid_argument("GridFunction: value count does not match grid");
        for (double x : values)
            if (!std::isfinite(x))
                throw std::invalid_argument("GridFunction: non-finite sample");
    }
};

/** Closed-form descriptor; kept alongside a name so experiment tables can
 *  identify their fixtures. */
struct Profile {
    std::string name;
    std::function<double(double)> f;

    double operator()(double x) const { return f(x); }
};

inline Profile gaussian(double a) {
    return Profile{"gaussian(" + std::to_string(a) + ")",
                   [a](double x) { return std::exp(-a * x * x); }};
}

inline Profile indicator(double lo, double hi) {
    return Profile{"indicator[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                   [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; }};
}

inline Profile hat(double center, double half_width) {
    return Profile{"hat(" + std::to_string(center) + "," + std::to_string(half_width) + ")",
                   [center, half_width](double x) {
                       return std::max(0.0, 1.0 - std::abs(x - center) / half_width);
                   }};
}

/** Smooth compactly supported bump exp(-1/(1-((x-c)/w)^2)) on |x-c| < w. */
inline Profile bump(double center, double half_width) {
    return Profile{"bump(" + std::to_string(center) + "," + std::to_string(half_width) + ")",
                   [center, half_width](double x) {
                       const double t = (x - center) / half_width;
                       if (std::abs(t) >= 1.0) return 0.0;
                       return std::exp(-1.0 / (1.0 - t * t));
                   }};
}

/** cos(freq*x) under a raised-cosine window supported on |x| < half_width. */
inline Profile cosine_window(double freq, double half_width) {
    return Profile{"cosine-window(" + std::to_string(freq) + "," +
                       std::to_string(half_width) + ")",
                   [freq, half_width](double x) {
                       if (std::abs(x) >= half_width) return 0.0;
                       const double w = std::cos(std::numbers::pi * x / (2.0 * half_width));
                       return std::cos(freq * x) * w * w;
                   }};
}

inline Profile translate(const Profile& p, double shift) {
    return Profile{p.name + "@" + std::to_string(shift),
                   [p, shift](double x) { return p(x - shift); }};
}

inline GridFunction sample(const Grid& grid, const Profile& p) {
    GridFunction out(grid);
    for (std::size_t k = 0; k < grid.n; ++k) out.values[k] = p(grid.node(k));
    return out;
}

/** h-weighted sum; trapezoid rule for the zero-extended integrand. */
inline double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.spacing();
}

inline double l2_norm_sq(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s * f.grid.spacing();
}

inline double lp_norm(const GridFunction& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.spacing(), 1.0 / p);
}

inline double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

/** Linear interpolation of the samples at x, zero outside [-L, L-h]. */
inline double interp(const GridFunction& f, double x) {
    const double L = f.grid.half_width;
    const double h = f.grid.spacing();
    if (x < -L || x >= L - h) {
        // last cell [L-2h+..] degenerates; treat [L-h, L) as decay to zero
        if (x >= L - h && x < L) {
            const double t = (x - (L - h)) / h;
            return f.values.back() * (1.0 - t);
        }
        return 0.0;
    }
    const double s = (x + L) / h;
    auto k = static_cast<std::size_t>(s);
    if (k >= f.grid.n - 1) k = f.grid.n - 2;
    const double t = s - static_cast<double>(k);
    return f.values[k] * (1.0 - t) + f.values[k + 1] * t;
}

/** Samples of x -> f(lambda x) on f's own grid by linear interpolation.
 *  If `truncated` is given, it is set when the dilated support no longer
 *  fits inside [-L, L). */
inline GridFunction dilate(const GridFunction& f, double lambda, bool* truncated = nullptr) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    const Grid& g = f.grid;
    GridFunction out(g);
    for (std::size_t k = 0; k < g.n; ++k) out.values[k] = interp(f, lambda * g.node(k));
    if (truncated) {
        *truncated = false;
        if (lambda < 1.0) {
            // support expands by 1/lambda; detect mass beyond lambda*L
            const double tiny = 1e-14 * (1.0 + sup_norm(f));
            for (std::size_t k = 0; k < g.n; ++k) {
                if (std::abs(g.node(k)) > lambda * g.half_width &&
                    std::abs(f.values[k]) > tiny) {
                    *truncated = true;
                    break;
                }
            }
        }
    }
    return out;
}

/** Exact dilation for closed-form inputs. */
inline GridFunction dilate(const Grid& grid, const Profile& p, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    GridFunction out(grid);
    for (std::size_t k = 0; k < grid.n; ++k) out.values[k] = p(lambda * grid.node(k));
    return out;
}

} // namespace frtm

#endif
