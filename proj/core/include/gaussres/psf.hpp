#ifndef GAUSSRES_PSF_HPP
#define GAUSSRES_PSF_HPP

#include <utility>

namespace gaussres {

/// Gaussian point-spread function u0(r) = sqrt(2/(pi w^2)) exp(-|r|^2/w^2).
struct GaussianPsf {
    double w;
    explicit GaussianPsf(double width);
};

/// All separation-dependent scalars of the PSF geometry in one bundle.
struct ModeGeometry {
    double d;           // separation
    double delta;       // overlap of the two displaced PSFs
    double d_delta;     // d(delta)/dd
    double dk2;         // (Delta k)^2
    double beta;        // derivative-overlap integral
    double eta_plus2;   // |d_d u+|^2 integral
    double eta_minus2;  // |d_d u-|^2 integral
};

/// exp(-d^2 / 2w^2)
double overlap_delta(const GaussianPsf& psf, double d);

/// 1/w^2 for the Gaussian PSF.
double delta_k_squared(const GaussianPsf& psf);

/// (1 - d^2/w^2) exp(-d^2/2w^2) / w^2
double beta(const GaussianPsf& psf, double d);

/// d(delta)/dd = -(d/w^2) exp(-d^2/2w^2)
double d_delta(const GaussianPsf& psf, double d);

/// Norms of the separation-derivatives of the normalized image modes u+-,
/// including the derivative of the 1/sqrt(2(1 +- delta)) normalization:
///   eta+-^2 = [(Delta k)^2 -+ beta] / (4 (1 +- delta)) - (d_d delta)^2 / (4 (1 +- delta)^2)
/// The minus branch cancels catastrophically for d << w and switches to a
/// series there. Requires d > 0 (the u- normalization is singular at d = 0).
std::pair<double, double> eta_squared(const GaussianPsf& psf, double d);

/// Bundle of the above; requires d > 0.
ModeGeometry mode_geometry(const GaussianPsf& psf, double d);

enum class GeometryQuantity { delta, dk2, beta, eta };

/// Independent check of the analytic geometry: evaluates the defining 2D
/// integral with adaptive tensor-product Gauss-Legendre quadrature on
/// [-L, L]^2, L = d/2 + 8w. Node count doubles until the result moves by
/// less than 1e-9 relative; non-convergence throws.
double quadrature_oracle(const GaussianPsf& psf, double d, GeometryQuantity which);

/// Quadrature + central-difference (Richardson extrapolated) oracle for
/// (eta+^2, eta-^2). The mode normalization is itself computed by quadrature
/// so the path shares nothing with the analytic formulas.
std::pair<double, double> quadrature_oracle_eta(const GaussianPsf& psf, double d);

}  // namespace gaussres

#endif
