#include "gaussres/qfi.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gaussres {

BasisSet::BasisSet() {
    std::array<Mat2, 4> blocks;
    const double s = 1.0 / std::sqrt(2.0);
    blocks[0] << 0.0, s, -s, 0.0;   // i sigma_y
    blocks[1] << s, 0.0, 0.0, -s;   // sigma_z
    blocks[2] << s, 0.0, 0.0, s;    // identity
    blocks[3] << 0.0, s, s, 0.0;    // sigma_x
    for (int l = 0; l < 4; ++l)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Mat4 a = Mat4::Zero();
                a.block<2, 2>(2 * j, 2 * k) = blocks[l];
                mats_[(l * 2 + j) * 2 + k] = a;
            }
}

const BasisSet& basis_set() {
    static const BasisSet basis;
    return basis;
}

namespace detail {

// Addend with the 0/0 rule: lossless pure directions produce vanishing
// numerators together with vanishing denominators and contribute nothing.
double qfi_safe_term(double numerator2, double denominator) {
    constexpr double kDenominatorFloor = 1e-10;
    constexpr double kNumeratorFloor2 = 1e-18;
    if (std::abs(denominator) < kDenominatorFloor) {
        if (numerator2 < kNumeratorFloor2) return 0.0;
        throw std::runtime_error("qfi: divergent QFI term (convention bug?)");
    }
    return numerator2 / denominator;
}

}  // namespace detail

namespace {

using detail::qfi_safe_term;

QfiBreakdown qfi_unit_width(const SourceSpec& source, double kappa, double d,
                            const QfiOptions& options) {
    const GaussianPsf psf(1.0);
    const ModeGeometry geom = mode_geometry(psf, d);
    const ImagingChannel channel(kappa, geom);
    const GaussianState src = make_source(source);
    const GaussianState img = propagate(src, channel);
    const PropagatedDerivatives der = propagate_derivatives(src, channel);

    const WilliamsonDecomposition wd = williamson(img.cov);
    const Mat4 s_inv = symplectic_inverse(wd.s);

    Mat4 d_par = Mat4::Zero();  // mode-derivative couplings, image basis
    d_par(0, 0) = d_par(1, 1) = std::sqrt(geom.eta_plus2);
    d_par(2, 2) = d_par(3, 3) = std::sqrt(geom.eta_minus2);

    const Mat4 m_cov = (options.transform == CovarianceTransform::congruence)
                           ? Mat4(s_inv * der.d_cov * s_inv.transpose())
                           : Mat4(s_inv * der.d_cov * wd.s);
    const Mat4 m_mode = s_inv * (img.cov - Mat4::Identity()) * d_par;

    QfiBreakdown out;
    out.terms.reserve(16);
    const BasisSet& basis = basis_set();
    for (int l = 0; l < 4; ++l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const Mat4& a = basis.at(l, j, k);
                const double a_jk = (a.transpose() * m_cov).trace();
                const double at_jk = (a.transpose() * m_mode).trace();
                const double nu_den =
                    (options.denominator == ModeCouplingDenominator::row) ? wd.nu[j] : wd.nu[k];
                QfiTerm term{l, j, k, 0.0, 0.0};
                term.a_contribution =
                    0.5 * qfi_safe_term(a_jk * a_jk, wd.nu[j] * wd.nu[k] - sign);
                term.atilde_contribution = qfi_safe_term(at_jk * at_jk, nu_den - sign);
                out.f_cov += term.a_contribution + term.atilde_contribution;
                out.terms.push_back(term);
            }
        }
    }

    const Vec4 v_inv_dx = img.cov.llt().solve(der.d_mean);
    out.f_mean = der.d_mean.dot(v_inv_dx) + img.mean.dot(d_par * d_par * img.mean);
    out.f_total = out.f_cov + out.f_mean;
    if (!std::isfinite(out.f_total)) {
        throw std::runtime_error("qfi: non-finite result");
    }
    return out;
}

}  // namespace

QfiBreakdown qfi(const SourceSpec& source, double kappa, const GaussianPsf& psf, double d,
                 const QfiOptions& options) {
    source.validate();
    const double w = psf.w;
    if (!(d >= kMinSeparationFactor * w)) {
        throw std::invalid_argument("qfi: d below the minimum supported separation 1e-3 w");
    }
    if (kappa * (1.0 + overlap_delta(psf, d)) > 1.0) {
        throw std::invalid_argument("qfi: kappa (1 + delta) exceeds 1");
    }
    QfiBreakdown out = qfi_unit_width(source, kappa, d / w, options);
    const double scale = 1.0 / (w * w);
    out.f_total *= scale;
    out.f_cov *= scale;
    out.f_mean *= scale;
    for (QfiTerm& t : out.terms) {
        t.a_contribution *= scale;
        t.atilde_contribution *= scale;
    }
    return out;
}

double qfi_coherent_closed_form(double n0, double kappa, double phi, const GaussianPsf& psf,
                                double d) {
    return 2.0 * kappa * n0 * (delta_k_squared(psf) - beta(psf, d) * std::cos(phi));
}

double qfi_upper_bound(double n0, double kappa, const GaussianPsf& psf, double d) {
    const double delta = overlap_delta(psf, d);
    if (!(kappa * (1.0 + delta) < 1.0)) {
        throw std::invalid_argument("qfi_upper_bound: kappa (1 + delta) must be < 1");
    }
    const double dd = d_delta(psf, d);
    const double dk2 = delta_k_squared(psf);
    const double b = beta(psf, d);
    const double f_plus = dk2 - b + kappa * dd * dd / (1.0 - kappa * (1.0 + delta));
    const double f_minus = dk2 + b + kappa * dd * dd / (1.0 - kappa * (1.0 - delta));
    return 2.0 * kappa * n0 * std::max(f_plus, f_minus);
}

double qfi_small_d_limit(double n0, double kappa, double gamma, double phi,
                         const GaussianPsf& psf) {
    return 2.0 * kappa * n0 * (1.0 - gamma * std::cos(phi)) / (psf.w * psf.w);
}

}  // namespace gaussres
