#ifndef GAUSSRES_SWEEP_HPP
#define GAUSSRES_SWEEP_HPP

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "gaussres/qfi.hpp"
#include "gaussres/sources.hpp"

namespace gaussres {

inline constexpr int kFormatVersion = 1;

/// Invalid user-facing parameters (CLI exit code 2, as opposed to engine
/// failures which surface as other exceptions).
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
    SourceSpec source;
    double kappa = 0.01;
    double w = 1.0;
    double d_min = 0.05;   // physical units (same as w)
    double d_max = 6.0;
    int points = 200;
    bool log_grid = false;
    bool include_bound = false;
    int oracle_stride = 0;  // 0 = no oracle column, n = every n-th row
    int threads = 1;

    void validate() const;  // d_min >= 1e-3 w, points >= 2, d_max > d_min, ...
};

struct SweepRow {
    double d_over_w;
    double f_total_w2;
    double f_cov_w2;
    double f_mean_w2;
    double f_per_photon_w2;  // f_total_w2 / n0
    double bound_w2;         // NaN unless include_bound
    double oracle_w2;        // NaN unless sampled
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // ascending d
};

/// Evaluate the grid. Points are independent and may run on spec.threads
/// workers; the result ordering and values do not depend on the worker count.
/// Engine errors abort with a row-identifying message.
SweepResult run_sweep(const SweepSpec& spec);

/// CSV with a '#'-prefixed header recording the full spec, 17 significant
/// digits per value. Identical specs produce byte-identical output.
void write_csv(std::ostream& os, const SweepResult& result);

/// d grid of the upper bound (Eq.-independent of the source family).
struct BoundRow {
    double d_over_w;
    double bound_w2;
    double f_plus_w2;
    double f_minus_w2;
};
std::vector<BoundRow> bound_curve(const SweepSpec& spec);
void write_bound_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<BoundRow>& rows);

}  // namespace gaussres

#endif
