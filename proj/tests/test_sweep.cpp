#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gaussres/sweep.hpp"
#include "gaussres/validation.hpp"

using namespace gaussres;
using doctest::Approx;

namespace {

SweepSpec base_spec() {
    SweepSpec spec;
    spec.source.variant = SourceVariant::CorrelatedThermal;
    spec.source.n0 = 1.0;
    spec.source.gamma = 0.7;
    spec.source.phi = std::numbers::pi;
    spec.kappa = 0.01;
    spec.d_min = 0.1;
    spec.d_max = 2.0;
    spec.points = 9;
    return spec;
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
}

}  // namespace

TEST_CASE("sweep spec validation") {
    SweepSpec bad = base_spec();
    bad.points = 1;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = base_spec();
    bad.d_min = 1e-4;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = base_spec();
    bad.d_max = bad.d_min;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = base_spec();
    bad.kappa = 1.2;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = base_spec();
    bad.source.gamma = 1.5;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = base_spec();
    bad.kappa = 0.6;  // kappa (1 + delta) > 1 near d_min
    CHECK_THROWS_AS(bad.validate(), SpecError);
}

TEST_CASE("sweep rows and grids") {
    SweepSpec spec = base_spec();
    spec.points = 2;
    const SweepResult two = run_sweep(spec);
    CHECK(two.rows.size() == 2);
    CHECK(two.rows.front().d_over_w == Approx(0.1));
    CHECK(two.rows.back().d_over_w == Approx(2.0));

    spec = base_spec();
    spec.log_grid = true;
    const SweepResult logr = run_sweep(spec);
    CHECK(logr.rows.front().d_over_w == Approx(0.1));
    CHECK(logr.rows.back().d_over_w == Approx(2.0));
    for (size_t i = 1; i < logr.rows.size(); ++i) {
        CHECK(logr.rows[i].d_over_w > logr.rows[i - 1].d_over_w);
        // log spacing: constant ratio
        if (i >= 2) {
            CHECK(logr.rows[i].d_over_w / logr.rows[i - 1].d_over_w ==
                  Approx(logr.rows[1].d_over_w / logr.rows[0].d_over_w).epsilon(1e-12));
        }
    }
}

TEST_CASE("every row satisfies the breakdown identity") {
    const SweepResult r = run_sweep(base_spec());
    for (const SweepRow& row : r.rows) {
        CHECK(row.f_total_w2 ==
              Approx(row.f_cov_w2 + row.f_mean_w2).epsilon(1e-12));
        CHECK(row.f_per_photon_w2 == Approx(row.f_total_w2 / 1.0));
        CHECK(row.f_total_w2 >= -1e-12);
        CHECK(std::isfinite(row.f_total_w2));
    }
}

TEST_CASE("bound column dominates") {
    SweepSpec spec = base_spec();
    spec.include_bound = true;
    const SweepResult r = run_sweep(spec);
    for (const SweepRow& row : r.rows) {
        CHECK(std::isfinite(row.bound_w2));
        CHECK(row.f_total_w2 <= row.bound_w2 * (1.0 + 1e-9));
    }
}

TEST_CASE("sparse oracle sampling") {
    SweepSpec spec = base_spec();
    spec.points = 7;
    spec.oracle_stride = 3;
    const SweepResult r = run_sweep(spec);
    for (size_t i = 0; i < r.rows.size(); ++i) {
        if (i % 3 == 0) {
            CHECK(std::isfinite(r.rows[i].oracle_w2));
            CHECK(r.rows[i].oracle_w2 ==
                  Approx(r.rows[i].f_total_w2).epsilon(1e-4));
        } else {
            CHECK(!std::isfinite(r.rows[i].oracle_w2));
        }
    }
}

TEST_CASE("identical specs give byte-identical output") {
    const std::string a = csv_of(run_sweep(base_spec()));
    const std::string b = csv_of(run_sweep(base_spec()));
    CHECK(a == b);
    CHECK(a.find("# format_version = 1") != std::string::npos);
    CHECK(a.find("# state = correlated-thermal") != std::string::npos);
    CHECK(a.find("d_over_w,f_total_w2,f_cov_w2,f_mean_w2,f_per_photon_w2") != std::string::npos);
}

TEST_CASE("worker count does not change results") {
    SweepSpec serial = base_spec();
    SweepSpec parallel = base_spec();
    parallel.threads = 4;
    const std::string a = csv_of(run_sweep(serial));
    const std::string b = csv_of(run_sweep(parallel));
    // headers record the spec, not the thread count, so the bytes must agree
    CHECK(a == b);
}

TEST_CASE("physical w rescales the reported columns") {
    SweepSpec unit = base_spec();
    SweepSpec wide = base_spec();
    wide.w = 2.0;
    wide.d_min = unit.d_min * 2.0;
    wide.d_max = unit.d_max * 2.0;
    const SweepResult ru = run_sweep(unit);
    const SweepResult rw = run_sweep(wide);
    for (size_t i = 0; i < ru.rows.size(); ++i) {
        CHECK(rw.rows[i].d_over_w == Approx(ru.rows[i].d_over_w).epsilon(1e-12));
        CHECK(rw.rows[i].f_total_w2 == Approx(ru.rows[i].f_total_w2).epsilon(1e-10));
    }
}

TEST_CASE("bound curve") {
    SweepSpec spec = base_spec();
    const auto rows = bound_curve(spec);
    CHECK(rows.size() == static_cast<size_t>(spec.points));
    for (const BoundRow& r : rows) {
        CHECK(r.bound_w2 ==
              Approx(2.0 * spec.kappa * spec.source.n0 * std::max(r.f_plus_w2, r.f_minus_w2))
                  .epsilon(1e-12));
    }
    std::ostringstream os;
    write_bound_csv(os, spec, rows);
    CHECK(os.str().find("d_over_w,bound_w2,f_plus_w2,f_minus_w2") != std::string::npos);
}

TEST_CASE("validation suites pass with the shipped conventions") {
    CHECK(run_validation(ValidationSuite::symplectic).all_pass());
    CHECK(run_validation(ValidationSuite::limits).all_pass());
}

TEST_CASE("the oracle suite rejects a flipped covariance transform") {
    QfiOptions flipped;
    flipped.transform = CovarianceTransform::similarity;
    const ValidationReport report = run_validation(ValidationSuite::oracle, flipped);
    CHECK_FALSE(report.all_pass());
    // and the failure is gross, not marginal
    for (const ValidationCheck& c : report.checks) {
        if (c.name == "oracle.engine_equivalence_210_points") {
            CHECK(c.measured > 100.0 * c.tolerance);
        }
    }
}

TEST_CASE("suite name parsing") {
    CHECK(validation_suite_from_string("geometry") == ValidationSuite::geometry);
    CHECK(validation_suite_from_string("all") == ValidationSuite::all);
    CHECK_THROWS_AS(validation_suite_from_string("nope"), std::invalid_argument);
}
