#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "frtm/grid.hpp"
#include "frtm/spectral.hpp"

using namespace frtm;
using Catch::Approx;

TEST_CASE("transform round trip is the identity") {
    const Grid g = make_grid(20.0, 4096);
    const GridFunction f = sample(g, gaussian(1.0));
    const GridFunction back = from_spectral(to_spectral(f));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
        num += (back.values[k] - f.values[k]) * (back.values[k] - f.values[k]);
        den += f.values[k] * f.values[k];
    }
    CHECK(std::sqrt(num / den) < 1e-12);
}

TEST_CASE("single-node spike has a flat-magnitude spectrum") {
    const Grid g = make_grid(1.0, 64);
    GridFunction f(g);
    f.values[10] = 1.0;
    const SpectralFunction s = to_spectral(f);
    const double m0 = std::abs(s.coeffs[0]);
    CHECK(m0 > 0.0);
    for (const auto& c : s.coeffs) CHECK(std::abs(c) == Approx(m0).epsilon(1e-12));
}

TEST_CASE("discrete Parseval identity") {
    const Grid g = make_grid(20.0, 4096);
    const GridFunction f = sample(g, gaussian(1.0));
    const double lhs = l2_norm_sq(f);
    const double rhs = spectral_energy(to_spectral(f));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * lhs);
}

TEST_CASE("quarter_laplacian basics") {
    const Grid g = make_grid(20.0, 4096);
    const GridFunction zero(g);
    const GridFunction qz = quarter_laplacian(zero);
    for (double v : qz.values) CHECK(v == 0.0);

    // windowed plane wave: eigenfunction of the multiplier in the interior
    const double xi0 = 4.0 * std::numbers::pi / g.half_width; // exactly on the grid
    const Profile wave{"wave", [xi0](double x) { return std::cos(xi0 * x); }};
    const GridFunction w = sample(g, wave);
    const GridFunction qw = quarter_laplacian(w);
    const double root = std::sqrt(xi0);
    for (std::size_t k = g.n / 4; k < 3 * g.n / 4; ++k)
        CHECK(qw.values[k] == Approx(root * w.values[k]).margin(5e-3 * root));

    // analytic oracle: int |xi| e^{-xi^2/2} dxi / ... = 1 for e^{-x^2}
    const GridFunction f = sample(g, gaussian(1.0));
    CHECK(l2_norm_sq(quarter_laplacian(f)) == Approx(1.0).margin(1e-3));
}

TEST_CASE("seminorm agrees with the operator route") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(seminorm_fourier_sq(GridFunction(g)) == 0.0);
    for (const auto& p : {gaussian(1.0), gaussian(4.0), bump(0.0, 1.0)}) {
        const GridFunction f = sample(g, p);
        const double sem = seminorm_fourier_sq(f);
        CHECK(std::abs(sem - l2_norm_sq(quarter_laplacian(f))) <= 1e-10 * sem);
    }
}

TEST_CASE("Gaussian seminorm against the analytic Fourier integral") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(seminorm_fourier_sq(sample(g, gaussian(1.0))) == Approx(1.0).margin(1e-3));
    // scale invariance of the seminorm under dilation
    CHECK(seminorm_fourier_sq(dilate(g, gaussian(1.0), 2.0)) == Approx(1.0).margin(1e-3));
}

TEST_CASE("seminorm_form_apply represents the quadratic form") {
    const Grid g = make_grid(20.0, 1024);
    const GridFunction u = sample(g, gaussian(1.0));
    const GridFunction v = sample(g, bump(0.5, 1.0));
    const GridFunction w = seminorm_form_apply(u);
    double pairing = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) pairing += w.values[k] * v.values[k];
    pairing *= g.spacing();

    // oracle: central difference of the seminorm along v
    const double t = 1e-6;
    GridFunction up(g), um(g);
    for (std::size_t k = 0; k < g.n; ++k) {
        up.values[k] = u.values[k] + t * v.values[k];
        um.values[k] = u.values[k] - t * v.values[k];
    }
    const double fd = (seminorm_fourier_sq(up) - seminorm_fourier_sq(um)) / (2.0 * t) / 2.0;
    CHECK(pairing == Approx(fd).epsilon(1e-6));
}

TEST_CASE("h12 norm combines the two pieces") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(h12_norm_sq(GridFunction(g)) == 0.0);
    const GridFunction f = sample(g, gaussian(1.0));
    CHECK(h12_norm_sq(f) ==
          Approx(1.0 + std::sqrt(std::numbers::pi / 2.0)).margin(2e-3));
    CHECK(h12_norm_sq(f) >= l2_norm_sq(f));
}
