// Command-line front end: parameter sweeps, invariant validation, and the
// analytic upper-bound curve, all emitting reproducible CSV.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gaussres/sweep.hpp"
#include "gaussres/validation.hpp"
#include "gaussres/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitEngineError = 3;
constexpr int kExitValidationFailure = 4;

struct SweepCliOptions {
    std::string state = "correlated-thermal";
    gaussres::SweepSpec spec;
    std::string out_path;
    int format_version = gaussres::kFormatVersion;
};

void add_sweep_options(CLI::App* cmd, SweepCliOptions& opt, bool with_bound_flags) {
    CLI::App* src = cmd->add_option_group("source");
    src->add_option("--state", opt.state,
                    "source family: correlated-thermal|displaced-thermal|coherent|squeezed")
        ->capture_default_str();
    src->add_option("--n0", opt.spec.source.n0, "mean photons per source")
        ->capture_default_str();
    src->add_option("--gamma", opt.spec.source.gamma, "degree-of-coherence magnitude [0,1]")
        ->capture_default_str();
    src->add_option("--phi", opt.spec.source.phi, "coherence phase (radians)")
        ->capture_default_str();
    src->add_option("--theta", opt.spec.source.theta, "squeezing-axis angle (radians)")
        ->capture_default_str();

    CLI::App* chan = cmd->add_option_group("channel");
    chan->add_option("--kappa", opt.spec.kappa, "transmission of the imaging system")
        ->capture_default_str();
    chan->add_option("--w", opt.spec.w, "PSF width (sets the length unit)")
        ->capture_default_str();

    CLI::App* grid = cmd->add_option_group("grid");
    grid->add_option("--d-min", opt.spec.d_min, "smallest separation")->capture_default_str();
    grid->add_option("--d-max", opt.spec.d_max, "largest separation")->capture_default_str();
    grid->add_option("--points", opt.spec.points, "grid size")->capture_default_str();
    grid->add_flag("--log-grid", opt.spec.log_grid, "logarithmic instead of linear grid");

    if (with_bound_flags) {
        cmd->add_flag("--with-bound", opt.spec.include_bound,
                      "append the analytic upper-bound column");
        cmd->add_option("--with-oracle", opt.spec.oracle_stride,
                        "sample the fidelity oracle every N rows");
        cmd->add_option("--threads", opt.spec.threads, "worker threads")->capture_default_str();
    }
    cmd->add_option("--out", opt.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--format-version", opt.format_version, "expected output format version")
        ->capture_default_str();
}

int write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return kExitOk;
    }
    std::ofstream os(path);
    if (!os) {
        std::cerr << "gaussres: cannot open output file: " << path << "\n";
        return kExitInvalidSpec;
    }
    writer(os);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Fisher information limits for two-point-source separation"};
    app.set_version_flag("--version", gaussres::kVersionString);
    app.require_subcommand(1);
    // config keys live in a section named after the verb, e.g. [sweep];
    // command-line flags override file values
    app.set_config("--config", "", "read options from a config file (flags win)");

    SweepCliOptions sweep_opt;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "QFI over a separation grid");
    add_sweep_options(sweep_cmd, sweep_opt, /*with_bound_flags=*/true);

    SweepCliOptions bound_opt;
    CLI::App* bound_cmd =
        app.add_subcommand("bound", "analytic upper bound over a separation grid");
    add_sweep_options(bound_cmd, bound_opt, /*with_bound_flags=*/false);

    std::string suite_name = "all";
    CLI::App* validate_cmd = app.add_subcommand("validate", "run an invariant suite");
    validate_cmd->add_option("suite", suite_name, "geometry|symplectic|oracle|limits|all")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidSpec;
    }

    try {
        if (sweep_cmd->parsed()) {
            if (sweep_opt.format_version != gaussres::kFormatVersion) {
                std::cerr << "gaussres: unsupported format_version\n";
                return kExitInvalidSpec;
            }
            sweep_opt.spec.source.variant = gaussres::source_variant_from_string(sweep_opt.state);
            sweep_opt.spec.validate();
            if (sweep_opt.spec.kappa > 0.2) {
                std::cerr << "gaussres: warning: kappa > 0.2 is outside the far-field regime; "
                             "bound-saturation statements assume kappa << 1\n";
            }
            const gaussres::SweepResult result = gaussres::run_sweep(sweep_opt.spec);
            return write_output(sweep_opt.out_path,
                                [&](std::ostream& os) { gaussres::write_csv(os, result); });
        }
        if (bound_cmd->parsed()) {
            if (bound_opt.format_version != gaussres::kFormatVersion) {
                std::cerr << "gaussres: unsupported format_version\n";
                return kExitInvalidSpec;
            }
            bound_opt.spec.source.variant = gaussres::source_variant_from_string(bound_opt.state);
            bound_opt.spec.validate();
            const auto rows = gaussres::bound_curve(bound_opt.spec);
            return write_output(bound_opt.out_path, [&](std::ostream& os) {
                gaussres::write_bound_csv(os, bound_opt.spec, rows);
            });
        }
        if (validate_cmd->parsed()) {
            const gaussres::ValidationSuite suite =
                gaussres::validation_suite_from_string(suite_name);
            const gaussres::ValidationReport report = gaussres::run_validation(suite);
            gaussres::print_report(std::cout, report);
            return report.all_pass() ? kExitOk : kExitValidationFailure;
        }
    } catch (const gaussres::SpecError& e) {
        std::cerr << "gaussres: invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gaussres: invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const std::exception& e) {
        std::cerr << "gaussres: engine error: " << e.what() << "\n";
        return kExitEngineError;
    }
    return kExitInvalidSpec;
}
