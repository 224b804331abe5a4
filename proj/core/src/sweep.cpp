#include "gaussres/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "gaussres/fidelity.hpp"
#include "gaussres/version.hpp"

namespace gaussres {

void SweepSpec::validate() const {
    try {
        source.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    if (!(w > 0.0)) throw SpecError("sweep: w must be positive");
    if (!(kappa > 0.0 && kappa < 1.0)) throw SpecError("sweep: kappa must be in (0, 1)");
    if (kappa * 2.0 > 1.0 && d_min < w) {
        // kappa (1 + delta) can exceed 1 near d = 0; reject eagerly
        if (kappa * (1.0 + std::exp(-d_min * d_min / (2.0 * w * w))) > 1.0) {
            throw SpecError("sweep: kappa (1 + delta) exceeds 1 at d_min");
        }
    }
    if (!(d_min >= kMinSeparationFactor * w)) {
        throw SpecError("sweep: d_min must be >= 1e-3 w");
    }
    if (!(d_max > d_min)) throw SpecError("sweep: d_max must exceed d_min");
    if (points < 2) throw SpecError("sweep: points must be >= 2");
    if (oracle_stride < 0) throw SpecError("sweep: oracle stride must be >= 0");
    if (threads < 1) throw SpecError("sweep: threads must be >= 1");
}

namespace {

std::vector<double> make_grid(const SweepSpec& spec) {
    std::vector<double> d(spec.points);
    if (spec.log_grid) {
        const double lo = std::log(spec.d_min), hi = std::log(spec.d_max);
        for (int i = 0; i < spec.points; ++i) {
            d[i] = std::exp(lo + (hi - lo) * i / (spec.points - 1));
        }
    } else {
        for (int i = 0; i < spec.points; ++i) {
            d[i] = spec.d_min + (spec.d_max - spec.d_min) * i / (spec.points - 1);
        }
    }
    d.front() = spec.d_min;
    d.back() = spec.d_max;
    return d;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_spec_header(std::ostream& os, const SweepSpec& spec, const char* kind) {
    os << "# gaussres " << kind << "\n";
    os << "# tool_version = " << kVersionString << "\n";
    os << "# format_version = " << kFormatVersion << "\n";
    os << "# state = " << to_string(spec.source.variant) << "\n";
    os << "# n0 = " << fmt17(spec.source.n0) << "\n";
    os << "# gamma = " << fmt17(spec.source.gamma) << "\n";
    os << "# phi = " << fmt17(spec.source.phi) << "\n";
    os << "# theta = " << fmt17(spec.source.theta) << "\n";
    os << "# kappa = " << fmt17(spec.kappa) << "\n";
    os << "# w = " << fmt17(spec.w) << "\n";
    os << "# d_min = " << fmt17(spec.d_min) << "\n";
    os << "# d_max = " << fmt17(spec.d_max) << "\n";
    os << "# points = " << spec.points << "\n";
    os << "# grid = " << (spec.log_grid ? "log" : "linear") << "\n";
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = make_grid(spec);
    const GaussianPsf psf(spec.w);
    const double w2 = spec.w * spec.w;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SweepResult result;
    result.spec = spec;
    result.rows.resize(grid.size());

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    const auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= static_cast<int>(grid.size()) || failed.load()) break;
            const double d = grid[i];
            try {
                const QfiBreakdown b = qfi(spec.source, spec.kappa, psf, d);
                SweepRow& row = result.rows[i];
                row.d_over_w = d / spec.w;
                row.f_total_w2 = b.f_total * w2;
                row.f_cov_w2 = b.f_cov * w2;
                row.f_mean_w2 = b.f_mean * w2;
                row.f_per_photon_w2 =
                    spec.source.n0 > 0.0 ? row.f_total_w2 / spec.source.n0 : nan;
                row.bound_w2 = spec.include_bound
                                   ? qfi_upper_bound(spec.source.n0, spec.kappa, psf, d) * w2
                                   : nan;
                row.oracle_w2 = nan;
                if (spec.oracle_stride > 0 && i % spec.oracle_stride == 0) {
                    row.oracle_w2 =
                        qfi_finite_difference(spec.source, spec.kappa, psf, d) * w2;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "row " + std::to_string(i) + " (d = " + fmt17(d) +
                                    "): " + e.what();
                }
                break;
            }
        }
    };

    if (spec.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int n_workers = std::min<int>(spec.threads, static_cast<int>(grid.size()));
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) {
        throw std::runtime_error("sweep aborted: " + error_message);
    }
    return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    write_spec_header(os, spec, "sweep");
    std::string cols = "d_over_w,f_total_w2,f_cov_w2,f_mean_w2,f_per_photon_w2";
    if (spec.include_bound) cols += ",bound_w2";
    if (spec.oracle_stride > 0) cols += ",oracle_w2";
    os << "# columns: " << cols << "\n";
    os << cols << "\n";
    for (const SweepRow& r : result.rows) {
        os << fmt17(r.d_over_w) << ',' << fmt17(r.f_total_w2) << ',' << fmt17(r.f_cov_w2)
           << ',' << fmt17(r.f_mean_w2) << ',' << fmt17(r.f_per_photon_w2);
        if (spec.include_bound) os << ',' << fmt17(r.bound_w2);
        if (spec.oracle_stride > 0) {
            os << ',';
            if (std::isfinite(r.oracle_w2)) os << fmt17(r.oracle_w2);
        }
        os << '\n';
    }
}

std::vector<BoundRow> bound_curve(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = make_grid(spec);
    const GaussianPsf psf(spec.w);
    const double w2 = spec.w * spec.w;
    std::vector<BoundRow> rows;
    rows.reserve(grid.size());
    for (double d : grid) {
        const double delta = overlap_delta(psf, d);
        const double dd = d_delta(psf, d);
        const double dk2 = delta_k_squared(psf);
        const double b = beta(psf, d);
        const double fp = dk2 - b + spec.kappa * dd * dd / (1.0 - spec.kappa * (1.0 + delta));
        const double fm = dk2 + b + spec.kappa * dd * dd / (1.0 - spec.kappa * (1.0 - delta));
        rows.push_back({d / spec.w, 2.0 * spec.kappa * spec.source.n0 * std::max(fp, fm) * w2,
                        fp * w2, fm * w2});
    }
    return rows;
}

void write_bound_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<BoundRow>& rows) {
    write_spec_header(os, spec, "bound");
    os << "# columns: d_over_w,bound_w2,f_plus_w2,f_minus_w2\n";
    os << "d_over_w,bound_w2,f_plus_w2,f_minus_w2\n";
    for (const BoundRow& r : rows) {
        os << fmt17(r.d_over_w) << ',' << fmt17(r.bound_w2) << ',' << fmt17(r.f_plus_w2)
           << ',' << fmt17(r.f_minus_w2) << '\n';
    }
}

}  // namespace gaussres
