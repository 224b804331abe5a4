#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "gaussres/fidelity.hpp"
#include "gaussres/qfi.hpp"
#include "gaussres/sweep.hpp"

using namespace gaussres;

namespace {

const GaussianPsf kPsf(1.0);

Mat4 bench_cov() {
    const GaussianState img = propagate(
        make_correlated_thermal(10.0, 0.7, 1.0),
        ImagingChannel(0.05, mode_geometry(kPsf, 0.8)));
    return img.cov;
}

void BM_Williamson(benchmark::State& state) {
    const Mat4 v = bench_cov();
    for (auto _ : state) {
        benchmark::DoNotOptimize(williamson(v));
    }
}
BENCHMARK(BM_Williamson);

void BM_QfiPoint(benchmark::State& state) {
    const SourceSpec s{SourceVariant::CorrelatedThermal, 100.0, 0.7, std::numbers::pi, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi(s, 0.01, kPsf, 0.7).f_total);
    }
}
BENCHMARK(BM_QfiPoint);

void BM_GaussianFidelity(benchmark::State& state) {
    const GaussianState a = propagate(make_correlated_thermal(5.0, 0.7, 1.0),
                                      ImagingChannel(0.05, mode_geometry(kPsf, 0.8)));
    const GaussianState b = propagate(make_correlated_thermal(5.0, 0.7, 1.0),
                                      ImagingChannel(0.05, mode_geometry(kPsf, 0.81)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_fidelity(a, b));
    }
}
BENCHMARK(BM_GaussianFidelity);

void BM_OraclePoint(benchmark::State& state) {
    const SourceSpec s{SourceVariant::SqueezedPair, 1.0, 0.0, 0.0, std::numbers::pi / 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi_finite_difference(s, 0.01, kPsf, 1.0));
    }
}
BENCHMARK(BM_OraclePoint);

void BM_SweepRow100(benchmark::State& state) {
    SweepSpec spec;
    spec.source = {SourceVariant::DisplacedThermal, 1.0, 0.7, std::numbers::pi, 0.0};
    spec.kappa = 0.01;
    spec.d_min = 0.05;
    spec.d_max = 6.0;
    spec.points = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(spec).rows.size());
    }
}
BENCHMARK(BM_SweepRow100);

}  // namespace

BENCHMARK_MAIN();
