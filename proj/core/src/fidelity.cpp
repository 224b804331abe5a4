#include "gaussres/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gaussres/channel.hpp"

namespace gaussres {

namespace detail {

namespace {

constexpr double kPureTol = 1e-9;

// Fidelity of a state with a pure state: F^2 = tr(rho sigma), which has the
// closed form below for Gaussian operators.
double overlap_sqrt(const Eigen::VectorXd& da, const Eigen::MatrixXd& vsum, int n_modes) {
    Eigen::LLT<Eigen::MatrixXd> llt(vsum);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("fidelity: V_a + V_b is not positive definite");
    }
    const double m2 = da.dot(llt.solve(da));
    double logdet = 0.0;
    for (int i = 0; i < vsum.rows(); ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    const double tr = std::pow(2.0, n_modes) * std::exp(-0.5 * m2 - 0.5 * logdet);
    return std::sqrt(tr);
}

// Strictly mixed pair. The Gibbs representatives M = (V iOmega + I)(V iOmega - I)^-1
// compose under operator products, so sqrt(rho_a) rho_b sqrt(rho_a) has the
// spectrum of M_a M_b. Only the outer half of the (mu, 1/mu) eigenvalue pairs
// is used; those carry full relative precision even when the product has a
// large dynamic range. Per normal mode, tr sqrt of a thermal operator with
// representative mu contributes (sqrt(mu) + 1)/sqrt(mu - 1).
double mixed_sqrt(const Eigen::VectorXd& da, const Eigen::MatrixXd& va,
                  const Eigen::MatrixXd& vb, int n_modes) {
    using Cplx = std::complex<double>;
    const int dim = 2 * n_modes;
    const Eigen::MatrixXd omega = symplectic_form_n(n_modes);
    const Eigen::MatrixXcd i_omega = Cplx(0.0, 1.0) * omega.cast<Cplx>();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);

    const Eigen::MatrixXcd wa = va.cast<Cplx>() * i_omega;
    const Eigen::MatrixXcd wb = vb.cast<Cplx>() * i_omega;
    // M = (W+I)(W-I)^-1, evaluated as a solve on the transposed system
    const Eigen::MatrixXcd ma =
        (wa - eye).transpose().partialPivLu().solve((wa + eye).transpose()).transpose();
    const Eigen::MatrixXcd mb =
        (wb - eye).transpose().partialPivLu().solve((wb + eye).transpose()).transpose();
    // inverses come from the same Cayley structure: M^-1 = (W-I)(W+I)^-1
    const Eigen::MatrixXcd ma_inv =
        (wa + eye).transpose().partialPivLu().solve((wa - eye).transpose()).transpose();
    const Eigen::MatrixXcd mb_inv =
        (wb + eye).transpose().partialPivLu().solve((wb - eye).transpose()).transpose();

    const auto large_half = [&](const Eigen::MatrixXcd& m) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("fidelity: eigensolver failed on Gibbs product");
        }
        std::vector<double> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = std::abs(es.eigenvalues()[i]);
        std::sort(v.begin(), v.end(), std::greater<double>());
        v.resize(n_modes);
        return v;
    };

    // The product spectrum pairs as {mu, 1/mu}; only the outer half is
    // resolvable when the dynamic range is large. The inverse product yields
    // the same outer half independently (its own outer half is the reciprocal
    // of the forward small half), which both validates the pairing and gives
    // a symmetric estimate.
    const std::vector<double> mu_fwd = large_half(ma * mb);
    const std::vector<double> mu_inv = large_half(mb_inv * ma_inv);
    std::vector<double> mu(n_modes);
    for (int i = 0; i < n_modes; ++i) {
        if (std::abs(mu_fwd[i] / mu_inv[i] - 1.0) > 1e-6) {
            throw std::runtime_error("fidelity: reciprocal eigenvalue pairing broken");
        }
        mu[i] = std::sqrt(mu_fwd[i] * mu_inv[i]);
    }

    const Eigen::MatrixXd vsum_mats = va + vb;
    Eigen::LLT<Eigen::MatrixXd> llt(vsum_mats);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("fidelity: V_a + V_b is not positive definite");
    }
    const double m2 = da.dot(llt.solve(da));
    double logdet = 0.0;
    for (int i = 0; i < dim; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));

    double log_f0_sq = n_modes * std::log(2.0) - 0.5 * logdet;
    for (int i = 0; i < n_modes; ++i) {
        const double m = std::max(mu[i], 1.0 + 1e-15);
        const double g = (std::sqrt(m) + 1.0) / std::sqrt(m - 1.0);
        log_f0_sq += 2.0 * std::log(g);
    }
    return std::exp(0.5 * log_f0_sq - 0.25 * m2);
}

}  // namespace

double fidelity_sqrt_n(const Eigen::VectorXd& mean_a, const Eigen::MatrixXd& cov_a,
                       const Eigen::VectorXd& mean_b, const Eigen::MatrixXd& cov_b) {
    const int dim = static_cast<int>(cov_a.rows());
    const int n_modes = dim / 2;
    const Eigen::VectorXd da = mean_b - mean_a;

    const Eigen::VectorXd nu_a = symplectic_eigenvalues_n(cov_a);
    const Eigen::VectorXd nu_b = symplectic_eigenvalues_n(cov_b);
    const bool pure_a = (nu_a.array() <= 1.0 + kPureTol).all();
    const bool pure_b = (nu_b.array() <= 1.0 + kPureTol).all();
    if (pure_a || pure_b) {
        return overlap_sqrt(da, cov_a + cov_b, n_modes);
    }

    const bool part_a = (nu_a.array() <= 1.0 + kPureTol).any();
    const bool part_b = (nu_b.array() <= 1.0 + kPureTol).any();
    if (part_a || part_b) {
        // One state has vacuum normal modes. In its Williamson frame those
        // modes are exactly |0>, so projecting the other state onto them is
        // an exact reduction: F(rho, sigma (x) |0><0|) = sqrt(c) F(rho', sigma)
        // with rho' the conditional state and c the vacuum matrix element.
        const bool b_has = part_b;
        const Eigen::VectorXd& xa = b_has ? mean_a : mean_b;
        const Eigen::MatrixXd& va = b_has ? cov_a : cov_b;
        const Eigen::VectorXd& xb = b_has ? mean_b : mean_a;
        const Eigen::MatrixXd& vb = b_has ? cov_b : cov_a;

        Eigen::MatrixXd s;
        Eigen::VectorXd nu;
        williamson_n(vb, s, nu);
        const Eigen::MatrixXd omega = symplectic_form_n(n_modes);
        const Eigen::MatrixXd s_inv = -omega * s.transpose() * omega;

        // joint displacement so the reference state is zero-mean
        Eigen::VectorXd xa2 = s_inv * (xa - xb);
        Eigen::MatrixXd va2 = s_inv * va * s_inv.transpose();

        std::vector<int> keep, drop;
        for (int m = 0; m < n_modes; ++m) {
            (nu[m] > 1.0 + kPureTol ? keep : drop).push_back(m);
        }
        const auto expand = [](const std::vector<int>& modes) {
            std::vector<int> idx;
            for (int m : modes) { idx.push_back(2 * m); idx.push_back(2 * m + 1); }
            return idx;
        };
        const std::vector<int> ki = expand(keep), di = expand(drop);

        Eigen::MatrixXd vB(di.size(), di.size()), vA(ki.size(), ki.size()),
            vAB(ki.size(), di.size());
        Eigen::VectorXd xB(di.size()), xA(ki.size());
        for (size_t i = 0; i < di.size(); ++i) {
            xB[i] = xa2[di[i]];
            for (size_t j = 0; j < di.size(); ++j) vB(i, j) = va2(di[i], di[j]);
        }
        for (size_t i = 0; i < ki.size(); ++i) {
            xA[i] = xa2[ki[i]];
            for (size_t j = 0; j < ki.size(); ++j) vA(i, j) = va2(ki[i], ki[j]);
            for (size_t j = 0; j < di.size(); ++j) vAB(i, j) = va2(ki[i], di[j]);
        }

        Eigen::MatrixXd mB = vB + Eigen::MatrixXd::Identity(di.size(), di.size());
        Eigen::LLT<Eigen::MatrixXd> llt(mB);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("fidelity: vacuum projection block not positive");
        }
        double logdet = 0.0;
        for (int i = 0; i < mB.rows(); ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
        const double c = std::pow(2.0, static_cast<int>(drop.size())) *
                         std::exp(-0.5 * xB.dot(llt.solve(xB)) - 0.5 * logdet);

        Eigen::MatrixXd v_cond = vA - vAB * llt.solve(vAB.transpose());
        v_cond = 0.5 * (v_cond + v_cond.transpose()).eval();
        const Eigen::VectorXd x_cond = xA - vAB * llt.solve(xB);

        Eigen::MatrixXd vb_keep = Eigen::MatrixXd::Zero(ki.size(), ki.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            vb_keep(2 * i, 2 * i) = nu[keep[i]];
            vb_keep(2 * i + 1, 2 * i + 1) = nu[keep[i]];
        }
        return std::sqrt(c) * fidelity_sqrt_n(x_cond, v_cond,
                                              Eigen::VectorXd::Zero(ki.size()), vb_keep);
    }

    return mixed_sqrt(da, cov_a, cov_b, n_modes);
}

}  // namespace detail

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
    // GaussianState construction already guarantees physicality.
    const double f = detail::fidelity_sqrt_n(a.mean, a.cov, b.mean, b.cov);
    return f * f;
}

// ---------------------------------------------------------------------------
// mode embedding
// ---------------------------------------------------------------------------

ModalState::ModalState(GaussianState s, Eigen::VectorXd up, Eigen::VectorXd um)
    : state(std::move(s)), mode_plus(std::move(up)), mode_minus(std::move(um)) {}

namespace {

constexpr int kHermiteModes = 96;

// A PSF displaced by +-d/2 along x is a coherent superposition of the
// Hermite-Gauss modes of the unshifted PSF with Poisson amplitudes
// c_m = e^{-alpha^2/2} alpha^m / sqrt(m!), alpha = d / (2w). The image modes
// u+- keep only even/odd m. All amplitudes are positive: no cancellation.
void image_mode_coefficients(double d_over_w, Eigen::VectorXd& up, Eigen::VectorXd& um) {
    const double alpha = d_over_w / 2.0;
    const double delta = std::exp(-d_over_w * d_over_w / 2.0);
    up.setZero(kHermiteModes);
    um.setZero(kHermiteModes);
    const double np = std::sqrt(2.0 * (1.0 + delta));
    const double nm = std::sqrt(2.0 * (1.0 - delta));
    double log_c = -alpha * alpha / 2.0;  // log of alpha^m / sqrt(m!) at m = 0
    for (int m = 0; m < kHermiteModes; ++m) {
        const double c = std::exp(log_c);
        if (m % 2 == 0) {
            up[m] = 2.0 * c / np;
        } else {
            um[m] = 2.0 * c / nm;
        }
        log_c += std::log(alpha) - 0.5 * std::log1p(m);  // -> m+1
    }
}

struct EmbeddedPair {
    Eigen::VectorXd mean_a, mean_b;
    Eigen::MatrixXd cov_a, cov_b;
};

// Express both states in a common 4-mode basis: the image modes of state b
// plus the normalized Gram-Schmidt residuals of state a's modes. Parity keeps
// the even and odd sectors independent, and state b is exactly
// (image state) (+) vacuum there.
EmbeddedPair embed_pair(const ModalState& a, const ModalState& b) {
    const double cp = b.mode_plus.dot(a.mode_plus);
    const double cm = b.mode_minus.dot(a.mode_minus);
    const Eigen::VectorXd r3 = a.mode_plus - cp * b.mode_plus;
    const Eigen::VectorXd r4 = a.mode_minus - cm * b.mode_minus;
    const double n3 = r3.norm();
    const double n4 = r4.norm();

    Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(4, 2);
    c1(0, 0) = cp;
    c1(1, 1) = cm;
    c1(2, 0) = n3;
    c1(3, 1) = n4;

    Eigen::MatrixXd ct = Eigen::MatrixXd::Zero(8, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            for (int s = 0; s < 2; ++s) ct(2 * i + s, 2 * j + s) = c1(i, j);

    const Eigen::MatrixXd comp = Eigen::MatrixXd::Identity(4, 4) - c1 * c1.transpose();
    Eigen::MatrixXd comp_q = Eigen::MatrixXd::Zero(8, 8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int s = 0; s < 2; ++s) comp_q(2 * i + s, 2 * j + s) = comp(i, j);

    EmbeddedPair e;
    e.cov_a = ct * a.state.cov * ct.transpose() + comp_q;
    e.mean_a = ct * a.state.mean;
    e.cov_b = Eigen::MatrixXd::Identity(8, 8);
    e.cov_b.topLeftCorner(4, 4) = b.state.cov;
    e.mean_b = Eigen::VectorXd::Zero(8);
    e.mean_b.head(4) = b.state.mean;
    return e;
}

double embedded_fidelity_sqrt(const ModalState& a, const ModalState& b) {
    const EmbeddedPair e = embed_pair(a, b);
    return detail::fidelity_sqrt_n(e.mean_a, e.cov_a, e.mean_b, e.cov_b);
}

}  // namespace

ModalFamily imaging_family(const SourceSpec& source, double kappa) {
    source.validate();
    const GaussianState src = make_source(source);
    return [src, kappa](double d) {
        const GaussianPsf unit(1.0);
        const ImagingChannel channel(kappa, mode_geometry(unit, d));
        GaussianState img = propagate(src, channel);
        Eigen::VectorXd up, um;
        image_mode_coefficients(d, up, um);
        return ModalState(std::move(img), std::move(up), std::move(um));
    };
}

double qfi_finite_difference(const ModalFamily& family, double d, const OracleConfig& cfg) {
    if (!(cfg.step > 0.0) || !(cfg.step < 0.1)) {
        throw std::invalid_argument("OracleConfig: step must be in (0, 0.1 w)");
    }
    const auto qfi_at = [&](double eps) {
        const ModalState lo = family(d - eps / 2.0);
        const ModalState hi = family(d + eps / 2.0);
        const double f = embedded_fidelity_sqrt(lo, hi);
        return 8.0 * (1.0 - f) / (eps * eps);
    };

    const double eps_cap = std::min(0.05, 0.45 * d);
    double eps = std::min(cfg.step, eps_cap);
    if (cfg.auto_scale) {
        // enlarge the step until 1 - F is comfortably above the double-precision
        // noise floor of the fidelity evaluation (target ~1e-6)
        const double probe_eps = std::min(std::max(eps, 1e-3), eps_cap);
        const double f_probe = std::max(qfi_at(probe_eps), 1e-12);
        eps = std::clamp(std::sqrt(8e-6 / f_probe), eps, eps_cap);
    }

    const double f1 = qfi_at(eps);
    if (!cfg.richardson) return f1;
    const double f2 = qfi_at(eps / 2.0);
    const double rich = (4.0 * f2 - f1) / 3.0;
    // absolute floor: below ~1e-8/w^2 the difference is oracle resolution,
    // not disagreement (relevant for families with (near) zero information)
    const double scale = std::max(std::abs(rich), 1e-8);
    if (std::abs(f2 - f1) / (3.0 * scale) > 1e-3) {
        throw std::runtime_error("qfi_finite_difference: extrapolation levels disagree");
    }
    return rich;
}

double qfi_finite_difference(const SourceSpec& source, double kappa, const GaussianPsf& psf,
                             double d, const OracleConfig& cfg) {
    // work at w = 1; QFI carries 1/w^2
    const ModalFamily family = imaging_family(source, kappa);
    const double f = qfi_finite_difference(family, d / psf.w, cfg);
    return f / (psf.w * psf.w);
}

}  // namespace gaussres
