#ifndef GAUSSRES_FIDELITY_HPP
#define GAUSSRES_FIDELITY_HPP

#include <functional>

#include <Eigen/Core>

#include "gaussres/psf.hpp"
#include "gaussres/sources.hpp"
#include "gaussres/symplectic.hpp"

namespace gaussres {

/// Uhlmann fidelity F(a, b) = (tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1] for
/// two-mode Gaussian states sharing the same mode basis. Symmetric;
/// F(rho, rho) = 1; for cov = I it reduces to exp(-|xbar_a - xbar_b|^2 / 4).
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

struct OracleConfig {
    double step = 1e-4;        // finite-difference step, in units of w
    bool richardson = true;    // extrapolate over (step, step/2)
    double tol = 1e-9;         // internal convergence tolerance
    bool auto_scale = true;    // enlarge the step until 1 - F is resolvable
};

/// A state together with the spatial modes carrying it, as coefficient
/// vectors over a fixed Hermite-Gauss basis. The oracle embeds families into
/// a common basis with these, so separation-dependent mode shapes contribute.
struct ModalState {
    GaussianState state;
    Eigen::VectorXd mode_plus;   // u+ coefficients (even components only)
    Eigen::VectorXd mode_minus;  // u- coefficients (odd components only)

    ModalState(GaussianState s, Eigen::VectorXd up, Eigen::VectorXd um);
};

using ModalFamily = std::function<ModalState(double)>;

/// Image-plane family of a source observed through the imaging channel, as a
/// map separation -> ModalState. Lengths in units of the PSF width.
ModalFamily imaging_family(const SourceSpec& source, double kappa);

/// QFI ground truth: 8 (1 - sqrt(F(rho_{d-e/2}, rho_{d+e/2}))) / e^2 with the
/// two states embedded in a common mode basis, Richardson extrapolated.
/// Family and d in units of the PSF width (the mode basis is the unit-width
/// Hermite-Gauss ladder). Throws if the extrapolation levels disagree by more
/// than 1e-3 relative.
double qfi_finite_difference(const ModalFamily& family, double d, const OracleConfig& cfg = {});

/// Convenience overload for the imaging pipeline (w rescales out).
double qfi_finite_difference(const SourceSpec& source, double kappa, const GaussianPsf& psf,
                             double d, const OracleConfig& cfg = {});

namespace detail {

/// sqrt-convention fidelity for n-mode Gaussian states (dynamic size).
/// Handles pure states and states with vacuum directions exactly.
double fidelity_sqrt_n(const Eigen::VectorXd& mean_a, const Eigen::MatrixXd& cov_a,
                       const Eigen::VectorXd& mean_b, const Eigen::MatrixXd& cov_b);

}  // namespace detail

}  // namespace gaussres

#endif
