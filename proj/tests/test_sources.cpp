#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <numbers>

#include "gaussres/channel.hpp"
#include "gaussres/sources.hpp"

using namespace gaussres;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_correlated_thermal(-1.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_correlated_thermal(1.0, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_displaced_thermal(1.0, -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_squeezed_pair(-0.5, 0.0), std::invalid_argument);
}

TEST_CASE("correlated thermal states") {
    const GaussianState uncorr = make_correlated_thermal(2.0, 0.0, 0.0);
    CHECK((uncorr.cov - 5.0 * Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(uncorr.mean.norm() == 0.0);

    for (double phi : {0.0, 0.9, kPi / std::numbers::e, kPi}) {
        const GaussianState s = make_correlated_thermal(1.5, 0.6, phi);
        CHECK(is_physical(s.cov));
        const std::complex<double> dmc = degree_of_mutual_coherence(s);
        CHECK(std::abs(dmc) == Approx(0.6).epsilon(1e-12));
        CHECK(std::arg(dmc) == Approx(phi).epsilon(1e-12));
    }

    // maximum thermal correlations leave one normal mode at vacuum
    const GaussianState max_corr = make_correlated_thermal(1.0, 1.0, 0.0);
    const auto [hi, lo] = symplectic_eigenvalues(max_corr.cov);
    CHECK(hi == Approx(5.0).epsilon(1e-12));  // 4 n0 + 1
    CHECK(lo == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displaced thermal states") {
    const double n0 = 1.7;
    const GaussianState coh = make_displaced_thermal(n0, 1.0, 0.4);
    CHECK((coh.cov - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
    Vec4 expected;
    expected << 1.0, 0.0, std::cos(0.4), std::sin(0.4);
    expected *= 2.0 * std::sqrt(n0);
    CHECK((coh.mean - expected).cwiseAbs().maxCoeff() < 1e-14);

    const GaussianState th = make_displaced_thermal(n0, 0.0, 1.0);
    CHECK(th.mean.norm() == 0.0);
    CHECK((th.cov - (2 * n0 + 1) * Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    // the photon budget per mode is n0 for every split between thermal and
    // displaced light
    for (double gamma : {0.0, 0.3, 0.8, 1.0}) {
        for (double phi : {0.0, 2.0}) {
            const GaussianState s = make_displaced_thermal(n0, gamma, phi);
            const auto [na, nb] = mode_photon_numbers(s);
            CHECK(na == Approx(n0).epsilon(1e-12));
            CHECK(nb == Approx(n0).epsilon(1e-12));
        }
    }

    for (double phi : {0.0, 1.3, kPi}) {
        const std::complex<double> dmc =
            degree_of_mutual_coherence(make_displaced_thermal(2.0, 0.45, phi));
        CHECK(std::abs(dmc) == Approx(0.45).epsilon(1e-12));
        CHECK(std::arg(dmc) == Approx(phi).epsilon(1e-12));
    }
}

TEST_CASE("both thermal families share the same coherence functional") {
    const double gamma = 0.62, phi = 1.9;
    const std::complex<double> c1 =
        degree_of_mutual_coherence(make_correlated_thermal(3.0, gamma, phi));
    const std::complex<double> c2 =
        degree_of_mutual_coherence(make_displaced_thermal(3.0, gamma, phi));
    CHECK(std::abs(c1 - c2) < 1e-12);
}

TEST_CASE("squeezed pairs") {
    const GaussianState vac = make_squeezed_pair(0.0, 0.0);
    CHECK((vac.cov - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    const double n0 = 1.0;
    const double xi = std::asinh(std::sqrt(n0));
    const GaussianState aligned = make_squeezed_pair(n0, 0.0);
    Vec4 d;
    d << std::exp(-2 * xi), std::exp(2 * xi), std::exp(-2 * xi), std::exp(2 * xi);
    CHECK((aligned.cov - Mat4(d.asDiagonal())).cwiseAbs().maxCoeff() < 1e-13);

    const GaussianState opposite = make_squeezed_pair(n0, kPi / 2);
    Vec4 d2;
    d2 << std::exp(-2 * xi), std::exp(2 * xi), std::exp(2 * xi), std::exp(-2 * xi);
    CHECK((opposite.cov - Mat4(d2.asDiagonal())).cwiseAbs().maxCoeff() < 1e-13);

    // purity and photon number
    for (double n : {0.1, 1.0, 10.0, 100.0}) {
        for (double theta : {0.0, 0.7, kPi / 2}) {
            const GaussianState s = make_squeezed_pair(n, theta);
            const auto [hi, lo] = symplectic_eigenvalues(s.cov);
            CHECK(hi <= 1.0 + 1e-10);
            CHECK(lo >= 1.0 - 1e-10);
            const auto [na, nb] = mode_photon_numbers(s);
            CHECK(na == Approx(n).epsilon(1e-10));
            CHECK(nb == Approx(n).epsilon(1e-10));
        }
    }
}

TEST_CASE("opposite squeezing in the +- basis is a two-mode squeezed vacuum") {
    const double n0 = 1.0;
    const double xi = std::asinh(std::sqrt(n0));
    const GaussianState s = make_squeezed_pair(n0, kPi / 2);

    // balanced mode mixer (q+, p+, q-, p-) = B (q1, p1, q2, p2)
    Mat4 b = Mat4::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    b.block<2, 2>(0, 0) = r * Mat2::Identity();
    b.block<2, 2>(0, 2) = r * Mat2::Identity();
    b.block<2, 2>(2, 0) = r * Mat2::Identity();
    b.block<2, 2>(2, 2) = -r * Mat2::Identity();

    const Mat4 v_pm = b * s.cov * b.transpose();
    Mat4 tmsv = Mat4::Zero();
    const double ch = std::cosh(2 * xi), sh = std::sinh(2 * xi);
    tmsv.block<2, 2>(0, 0) = ch * Mat2::Identity();
    tmsv.block<2, 2>(2, 2) = ch * Mat2::Identity();
    Mat2 sz;
    sz << -sh, 0.0, 0.0, sh;
    tmsv.block<2, 2>(0, 2) = sz;
    tmsv.block<2, 2>(2, 0) = sz;
    CHECK((v_pm - tmsv).cwiseAbs().maxCoeff() < 1e-12);

    // and it is entangled across the +/- split
    CHECK(ppt_min_symplectic_eigenvalue(v_pm) < 1.0 - 1e-6);
}

TEST_CASE("make_source dispatch") {
    SourceSpec spec;
    spec.variant = SourceVariant::Coherent;
    spec.n0 = 2.0;
    spec.gamma = 0.3;  // ignored for coherent
    spec.phi = 1.0;
    const GaussianState coh = make_source(spec);
    const GaussianState displaced = make_displaced_thermal(2.0, 1.0, 1.0);
    CHECK((coh.cov - displaced.cov).cwiseAbs().maxCoeff() == 0.0);
    CHECK((coh.mean - displaced.mean).cwiseAbs().maxCoeff() == 0.0);

    CHECK(source_variant_from_string("squeezed") == SourceVariant::SqueezedPair);
    CHECK_THROWS_AS(source_variant_from_string("bogus"), std::invalid_argument);
    CHECK(std::string(to_string(SourceVariant::DisplacedThermal)) == "displaced-thermal");
}

TEST_CASE("coherence functional edge cases") {
    // uncorrelated thermal light is incoherent
    CHECK(std::abs(degree_of_mutual_coherence(make_correlated_thermal(1.0, 0.0, 0.0))) <
          1e-15);
    // vacuum has no photons to be coherent with
    const GaussianState vac(Vec4::Zero(), Mat4::Identity());
    CHECK_THROWS_AS(degree_of_mutual_coherence(vac), std::domain_error);
}

TEST_CASE("factory outputs stay physical over the parameter box") {
    for (double n0 : {0.0, 0.5, 10.0, 1000.0}) {
        for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            for (double phi : {-kPi, -1.0, 0.0, 2.2, kPi}) {
                const GaussianState c = make_correlated_thermal(n0, gamma, phi);
                CHECK(is_physical(c.cov));
                const GaussianState d = make_displaced_thermal(n0, gamma, phi);
                CHECK(is_physical(d.cov));
                if (n0 > 0.0 && gamma > 0.0) {
                    CHECK(std::abs(degree_of_mutual_coherence(c)) <= 1.0 + 1e-12);
                    CHECK(std::abs(degree_of_mutual_coherence(d)) <= 1.0 + 1e-12);
                }
            }
        }
    }
    for (double theta : {0.0, 1.0, 2.0, kPi}) {
        CHECK(is_physical(make_squeezed_pair(1000.0, theta).cov));
    }
}
