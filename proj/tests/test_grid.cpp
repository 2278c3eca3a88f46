#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "frtm/gagliardo.hpp"
#include "frtm/grid.hpp"
#include "frtm/spectral.hpp"

using namespace frtm;
using Catch::Approx;

namespace {
const double kSqrtPiHalf = std::sqrt(std::numbers::pi / 2.0);
}

TEST_CASE("make_grid node convention") {
    const Grid g = make_grid(1.0, 4);
    CHECK(g.spacing() == Approx(0.5));
    CHECK(g.node(0) == Approx(-1.0));
    CHECK(g.node(1) == Approx(-0.5));
    CHECK(g.node(2) == Approx(0.0));
    CHECK(g.node(3) == Approx(0.5));

    const Grid big = make_grid(20.0, 4096);
    CHECK(big.spacing() == Approx(40.0 / 4096.0));
}

TEST_CASE("make_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 16), std::invalid_argument);
}

TEST_CASE("sample evaluates descriptors at nodes") {
    CHECK(gaussian(1.0)(0.0) == Approx(1.0));
    CHECK(gaussian(1.0)(1.0) == Approx(std::exp(-1.0)));
    CHECK(indicator(-1.0, 1.0)(2.0) == 0.0);

    const Grid g = make_grid(2.0, 16);
    const GridFunction f = sample(g, gaussian(1.0));
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(f.values[k] == Approx(std::exp(-g.node(k) * g.node(k))));
}

TEST_CASE("GridFunction rejects non-finite samples") {
    const Grid g = make_grid(1.0, 4);
    CHECK_THROWS_AS(GridFunction(g, {0.0, 1.0, std::nan(""), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("l2_norm_sq against analytic integrals") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(l2_norm_sq(GridFunction(g)) == 0.0);
    // int e^{-2x^2} dx = sqrt(pi/2)
    CHECK(l2_norm_sq(sample(g, gaussian(1.0))) == Approx(kSqrtPiHalf).epsilon(1e-6));
    CHECK(l2_norm_sq(sample(g, indicator(-1.0, 1.0))) ==
          Approx(2.0).margin(2.0 * g.spacing()));
}

TEST_CASE("lp_norm against analytic integrals") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(lp_norm(GridFunction(g), 3.0) == 0.0);
    CHECK(lp_norm(sample(g, gaussian(1.0)), 2.0) ==
          Approx(std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-6));
    CHECK(lp_norm(sample(g, gaussian(0.5)), 4.0) ==
          Approx(std::pow(std::numbers::pi / 2.0, 0.125)).epsilon(1e-6));
    CHECK_THROWS_AS(lp_norm(GridFunction(g), 0.5), std::invalid_argument);
}

TEST_CASE("dilate identity and scaling laws") {
    const Grid g = make_grid(20.0, 4096);
    const GridFunction f = sample(g, gaussian(1.0));

    const GridFunction same = dilate(f, 1.0);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(same.values[k] == Approx(f.values[k]).margin(1e-14));

    const GridFunction half = dilate(g, gaussian(1.0), 2.0);
    CHECK(l2_norm_sq(half) == Approx(0.5 * kSqrtPiHalf).epsilon(1e-6));
    CHECK(seminorm_fourier_sq(half) == Approx(1.0).margin(2e-3));
}

TEST_CASE("scale invariance across closed-form fixtures") {
    const Grid g = make_grid(20.0, 4096);
    const Profile fixtures[] = {gaussian(1.0), gaussian(4.0), bump(0.0, 1.0)};
    for (const auto& p : fixtures) {
        const GridFunction f = sample(g, p);
        const double sem = seminorm_fourier_sq(f);
        const double l2 = l2_norm_sq(f);
        for (double lam : {0.5, 2.0, 4.0}) {
            const GridFunction fl = dilate(g, p, lam);
            CHECK(seminorm_fourier_sq(fl) == Approx(sem).epsilon(5e-3));
            CHECK(l2_norm_sq(fl) == Approx(l2 / lam).epsilon(5e-3));
        }
    }
}

TEST_CASE("dilate flags support truncation") {
    const Grid g = make_grid(2.0, 64);
    const GridFunction f = sample(g, hat(0.0, 1.5));
    bool truncated = false;
    dilate(f, 0.25, &truncated); // support would grow to [-6, 6]
    CHECK(truncated);
    truncated = true;
    dilate(f, 2.0, &truncated);
    CHECK_FALSE(truncated);
    CHECK_THROWS_AS(dilate(f, 0.0), std::invalid_argument);
}

TEST_CASE("Gagliardo path agrees with the spectral path") {
    const Grid g = make_grid(20.0, 4096);
    CHECK(seminorm_gagliardo_sq(GridFunction(g)) == 0.0);

    const GridFunction gauss = sample(g, gaussian(1.0));
    CHECK(seminorm_gagliardo_sq(gauss) == Approx(1.0).margin(1e-2));

    const Profile suite[] = {gaussian(1.0), gaussian(4.0), hat(0.0, 1.0), bump(0.0, 1.0),
                             cosine_window(2.0, 5.0)};
    for (const auto& p : suite) {
        const GridFunction f = sample(g, p);
        const double sf = seminorm_fourier_sq(f);
        const double sg = seminorm_gagliardo_sq(f);
        CHECK(std::abs(sg - sf) <= 1e-2 * std::max(sf, 1e-8));
    }
}

TEST_CASE("refinement convergence of the Gaussian seminorm") {
    double prev_val = 0.0;
    double prev_change = 0.0;
    bool have_prev = false, have_change = false;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
        const double val = seminorm_fourier_sq(sample(make_grid(20.0, n), gaussian(1.0)));
        if (have_prev) {
            const double change = std::abs(val - prev_val);
            if (have_change) CHECK(change < prev_change);
            prev_change = change;
            have_change = true;
        }
        prev_val = val;
        have_prev = true;
    }
    CHECK(prev_change < 1e-4);
}
