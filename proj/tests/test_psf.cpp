#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "gaussres/psf.hpp"

using namespace gaussres;

TEST_CASE("psf construction") {
    CHECK_THROWS_AS(GaussianPsf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianPsf(-1.0), std::invalid_argument);
}

TEST_CASE("overlap delta") {
    const GaussianPsf psf(1.0);
    CHECK(overlap_delta(psf, 0.0) == doctest::Approx(1.0));
    CHECK(overlap_delta(psf, 10.0) == doctest::Approx(std::exp(-50.0)).epsilon(1e-12));
    CHECK(overlap_delta(psf, 1.0) ==
          doctest::Approx(quadrature_oracle(psf, 1.0, GeometryQuantity::delta)).epsilon(1e-8));
    CHECK_THROWS_AS(overlap_delta(psf, -0.1), std::invalid_argument);
}

TEST_CASE("delta_k_squared") {
    CHECK(delta_k_squared(GaussianPsf(1.0)) == doctest::Approx(1.0));
    CHECK(delta_k_squared(GaussianPsf(2.0)) == doctest::Approx(0.25));
    const GaussianPsf psf(1.0);
    CHECK(std::abs(delta_k_squared(psf) - quadrature_oracle(psf, 0.0, GeometryQuantity::dk2)) <
          1e-8);
    // dimensional scaling
    CHECK(delta_k_squared(GaussianPsf(3.0)) * 9.0 == doctest::Approx(delta_k_squared(psf)));
}

TEST_CASE("beta") {
    const GaussianPsf psf(1.0);
    CHECK(beta(psf, 0.0) == doctest::Approx(delta_k_squared(psf)));
    CHECK(std::abs(beta(psf, 1.0)) < 1e-14);  // analytic root at d = w
    CHECK(std::abs(quadrature_oracle(psf, 1.0, GeometryQuantity::beta)) < 1e-8);
    const double expected = -3.0 * std::exp(-2.0);
    CHECK(beta(psf, 2.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(quadrature_oracle(psf, 2.0, GeometryQuantity::beta) ==
          doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("d_delta") {
    const GaussianPsf psf(1.0);
    CHECK(d_delta(psf, 0.0) == 0.0);
    CHECK(d_delta(psf, 1.0) == doctest::Approx(-std::exp(-0.5)).epsilon(1e-12));
    const double h = 1e-5;
    for (double d : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double fd = (overlap_delta(psf, d + h) - overlap_delta(psf, d - h)) / (2 * h);
        CHECK(std::abs(d_delta(psf, d) - fd) < 1e-8);
        CHECK(d_delta(psf, d) < 0.0);
    }
}

TEST_CASE("eta squared against the quadrature oracle") {
    const GaussianPsf psf(1.0);
    CHECK_THROWS_AS(eta_squared(psf, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(eta_squared(psf, -1.0), std::invalid_argument);

    // frozen values computed from the defining integrals at d = 3w
    const auto [ep3, em3] = eta_squared(psf, 3.0);
    CHECK(ep3 == doctest::Approx(0.2689555455597102).epsilon(1e-10));
    CHECK(em3 == doctest::Approx(0.2300569170490649).epsilon(1e-10));
    const auto [op3, om3] = quadrature_oracle_eta(psf, 3.0);
    CHECK(ep3 == doctest::Approx(op3).epsilon(1e-6));
    CHECK(em3 == doctest::Approx(om3).epsilon(1e-6));
    CHECK(ep3 + em3 == doctest::Approx(op3 + om3).epsilon(1e-6));

    // far apart, each derivative norm approaches (Delta k)^2 / 4
    const auto [ep12, em12] = eta_squared(psf, 12.0);
    CHECK(ep12 == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(em12 == doctest::Approx(0.25).epsilon(1e-10));
    const auto [op12, om12] = quadrature_oracle_eta(psf, 12.0);
    CHECK(ep12 == doctest::Approx(op12).epsilon(1e-6));
    CHECK(em12 == doctest::Approx(om12).epsilon(1e-6));
}

TEST_CASE("eta minus stays controlled in the small-separation scan") {
    const GaussianPsf psf(1.0);
    double prev = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double d = 0.01 * i;
        const auto [ep, em] = eta_squared(psf, d);
        const auto [op, om] = quadrature_oracle_eta(psf, d);
        (void)op;
        CHECK(std::isfinite(em));
        CHECK(em >= 0.0);
        CHECK(em == doctest::Approx(om).epsilon(1e-4));
        // leading behavior ~ d^2 / 24 for the Gaussian PSF
        CHECK(em == doctest::Approx(d * d / 24.0).epsilon(2e-2));
        CHECK(em > prev);
        prev = em;
        CHECK(ep > 0.0);
    }
}

TEST_CASE("mode geometry bundle") {
    const GaussianPsf psf(1.0);
    const ModeGeometry g = mode_geometry(psf, 1.0);
    CHECK(g.delta == doctest::Approx(std::exp(-0.5)));
    CHECK(std::abs(g.beta) < 1e-14);
    CHECK(g.dk2 == doctest::Approx(1.0));
    CHECK(g.d == 1.0);

    const ModeGeometry g5 = mode_geometry(psf, 5.0);
    CHECK(g5.delta < 4e-6);
    CHECK(g5.beta == doctest::Approx(-24.0 * std::exp(-12.5)).epsilon(1e-10));

    CHECK_THROWS_AS(mode_geometry(psf, 0.0), std::invalid_argument);

    // invariants over a grid
    double prev_delta = 1.0;
    for (double d = 0.05; d <= 6.0; d += 0.12) {
        const ModeGeometry m = mode_geometry(psf, d);
        CHECK(m.delta > 0.0);
        CHECK(m.delta <= 1.0);
        CHECK(m.delta < prev_delta);  // strictly decreasing
        prev_delta = m.delta;
        CHECK(m.dk2 > 0.0);
        CHECK(m.eta_plus2 >= 0.0);
        CHECK(m.eta_minus2 >= 0.0);
        CHECK(std::abs(m.beta) <= m.dk2);
    }
}

TEST_CASE("quadrature oracle contract") {
    const GaussianPsf psf(1.0);
    CHECK(quadrature_oracle(psf, 0.0, GeometryQuantity::delta) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(quadrature_oracle(psf, 1.0, GeometryQuantity::eta), std::invalid_argument);
    CHECK_THROWS_AS(quadrature_oracle(psf, -1.0, GeometryQuantity::delta),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadrature_oracle_eta(psf, 0.0), std::invalid_argument);
}

TEST_CASE("pure power-of-w scaling") {
    const GaussianPsf unit(1.0);
    const GaussianPsf wide(2.5);
    const double w2 = 2.5 * 2.5;
    for (double du : {0.2, 0.8, 1.7, 3.0}) {
        const double d = du * 2.5;
        CHECK(overlap_delta(wide, d) == doctest::Approx(overlap_delta(unit, du)).epsilon(1e-14));
        CHECK(beta(wide, d) * w2 == doctest::Approx(beta(unit, du)).epsilon(1e-14));
        CHECK(d_delta(wide, d) * 2.5 == doctest::Approx(d_delta(unit, du)).epsilon(1e-14));
        const auto [epw, emw] = eta_squared(wide, d);
        const auto [epu, emu] = eta_squared(unit, du);
        CHECK(epw * w2 == doctest::Approx(epu).epsilon(1e-13));
        CHECK(emw * w2 == doctest::Approx(emu).epsilon(1e-13));
    }
}
