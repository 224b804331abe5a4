#ifndef GAUSSRES_CHANNEL_HPP
#define GAUSSRES_CHANNEL_HPP

#include <utility>

#include "gaussres/psf.hpp"
#include "gaussres/symplectic.hpp"

namespace gaussres {

/// Diffraction-limited imaging channel: the symmetric/antisymmetric source
/// superpositions pass through independent loss channels with transmissions
/// kappa+- = (1 +- delta) kappa into the orthonormal image modes u+-.
/// Image-plane ordering is (q+, p+, q-, p-).
struct ImagingChannel {
    double kappa;
    ModeGeometry geometry;

    ImagingChannel(double kappa_in, const ModeGeometry& geometry_in);

    /// Saturation claims for the upper bound hold for kappa << 1; callers may
    /// surface this as a warning (the constructor stays quiet).
    bool far_field() const { return kappa <= 0.2; }
};

struct PropagationMatrices {
    Mat4 t;   // two-block structure with entries sqrt(kappa+-/2)
    Mat4 n;   // diag((1-kappa+) I2, (1-kappa-) I2)
    Mat4 dt;  // d t / dd
    Mat4 dn;  // d n / dd
};

/// (kappa+, kappa-) = ((1 + delta) kappa, (1 - delta) kappa)
std::pair<double, double> transmissions(const ImagingChannel& channel);

PropagationMatrices build_matrices(const ImagingChannel& channel);

/// Image-plane state: x = T x_s, V = T V_s T^T + N.
GaussianState propagate(const GaussianState& source, const ImagingChannel& channel);

struct PropagatedDerivatives {
    Mat4 d_cov;   // dV/dd with the source moments held fixed
    Vec4 d_mean;  // d(xbar)/dd
};

PropagatedDerivatives propagate_derivatives(const GaussianState& source,
                                            const ImagingChannel& channel);

/// Per-mode photon numbers (V_qq + V_pp - 2)/4 + (q^2 + p^2)/4 of a two-mode
/// state, and their sum.
std::pair<double, double> mode_photon_numbers(const GaussianState& state);
double total_photon_number(const GaussianState& state);

}  // namespace gaussres

#endif
