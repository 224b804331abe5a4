#include "gaussres/symplectic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace gaussres {

const Mat4& symplectic_form() {
    static const Mat4 omega = [] {
        Mat4 m = Mat4::Zero();
        m(0, 1) = 1.0; m(1, 0) = -1.0;
        m(2, 3) = 1.0; m(3, 2) = -1.0;
        return m;
    }();
    return omega;
}

namespace detail {

Eigen::MatrixXd symplectic_form_n(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

namespace {

Eigen::MatrixXd matrix_sqrt_spd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("symplectic: eigensolver failed on covariance");
    }
    Eigen::VectorXd w = es.eigenvalues();
    if (w.minCoeff() <= 0.0) {
        throw std::invalid_argument("symplectic: covariance is not positive definite");
    }
    return es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::VectorXd symplectic_eigenvalues_n(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::MatrixXd vh = matrix_sqrt_spd(cov);
    Eigen::MatrixXd k = vh * symplectic_form_n(n) * vh;  // real antisymmetric
    Eigen::MatrixXcd ik = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ik);
    Eigen::VectorXd w = es.eigenvalues();  // ascending, pairs +-nu
    Eigen::VectorXd nu(n);
    for (int i = 0; i < n; ++i) nu[i] = w[2 * n - 1 - i];  // descending positives
    return nu;
}

// Williamson via the antisymmetric normal form of K = V^(1/2) Omega V^(1/2).
// With K = Q J Q^T, J = blkdiag(nu_k [[0,1],[-1,0]]), the symplectic factor is
// S = V^(1/2) Q D^(-1/2). The gauge inside each 2x2 block is fixed by phasing
// the complex eigenvector so its largest component is real positive, which
// makes the output deterministic.
void williamson_n(const Eigen::MatrixXd& cov, Eigen::MatrixXd& s, Eigen::VectorXd& nu) {
    const int n = static_cast<int>(cov.rows()) / 2;
    const Eigen::MatrixXd vh = matrix_sqrt_spd(cov);
    const Eigen::MatrixXd k = vh * symplectic_form_n(n) * vh;
    Eigen::MatrixXcd ik = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ik);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("williamson: eigensolver failed");
    }

    nu.resize(n);
    Eigen::MatrixXd q(2 * n, 2 * n);
    for (int m = 0; m < n; ++m) {
        const int idx = 2 * n - 1 - m;  // positive eigenvalues, descending
        nu[m] = es.eigenvalues()[idx];
        Eigen::VectorXcd z = es.eigenvectors().col(idx);
        int piv = 0;
        z.cwiseAbs().maxCoeff(&piv);
        z *= std::abs(z[piv]) / z[piv];
        const Eigen::VectorXd u = std::sqrt(2.0) * z.real();
        const Eigen::VectorXd v = std::sqrt(2.0) * z.imag();
        // column pair (v, u) realizes the +nu block [[0, nu], [-nu, 0]]
        q.col(2 * m) = v;
        q.col(2 * m + 1) = u;
    }

    Eigen::VectorXd dinv(2 * n);
    for (int m = 0; m < n; ++m) {
        dinv[2 * m] = dinv[2 * m + 1] = 1.0 / std::sqrt(nu[m]);
    }
    s = vh * q * dinv.asDiagonal();
}

}  // namespace detail

namespace {

void require_symmetric(const Mat4& cov, double tol, const char* what) {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument(std::string(what) + ": covariance not symmetric");
    }
}

}  // namespace

GaussianState::GaussianState(const Vec4& mean_in, const Mat4& cov_in)
    : mean(mean_in), cov(0.5 * (cov_in + cov_in.transpose())) {
    require_symmetric(cov_in, 1e-12 * std::max(1.0, cov_in.cwiseAbs().maxCoeff()),
                      "GaussianState");
    if (!is_physical(cov)) {
        throw std::invalid_argument("GaussianState: covariance violates the uncertainty relation");
    }
}

bool is_physical(const Mat4& cov, double tol) {
    require_symmetric(cov, 1e-9, "is_physical");
    Eigen::Matrix4cd m = cov.cast<std::complex<double>>() +
                         std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    return es.eigenvalues().minCoeff() >= -tol;
}

std::pair<double, double> symplectic_eigenvalues(const Mat4& cov) {
    require_symmetric(cov, 1e-9, "symplectic_eigenvalues");
    // Direct route through i*Omega*V; the Hermitian K-route below is used for
    // the decomposition itself. Eigenvalues come in +-nu pairs, each doubly
    // degenerate across the two routes.
    Eigen::Matrix4cd iov = std::complex<double>(0.0, 1.0) *
                           (symplectic_form() * cov).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(iov);
    std::array<double, 4> mods;
    for (int i = 0; i < 4; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mods.begin(), mods.end(), std::greater<double>());
    const double scale = std::max(1.0, mods[0]);
    if (std::abs(mods[0] - mods[1]) > 1e-8 * scale || std::abs(mods[2] - mods[3]) > 1e-8 * scale) {
        throw std::runtime_error("symplectic_eigenvalues: degeneracy pattern broken");
    }
    return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3])};
}

Mat4 WilliamsonDecomposition::normal_form() const {
    Vec4 d;
    d << nu[0], nu[0], nu[1], nu[1];
    return d.asDiagonal();
}

Mat4 WilliamsonDecomposition::reconstruct() const {
    return s * normal_form() * s.transpose();
}

WilliamsonDecomposition williamson(const Mat4& cov) {
    require_symmetric(cov, 1e-9, "williamson");
    Eigen::MatrixXd s;
    Eigen::VectorXd nu;
    detail::williamson_n(cov, s, nu);
    WilliamsonDecomposition out;
    out.s = s;
    out.nu = {nu[0], nu[1]};
    return out;
}

double ppt_min_symplectic_eigenvalue(const Mat4& cov) {
    Mat4 p = Mat4::Identity();
    p(3, 3) = -1.0;
    const Mat4 cov_pt = p * cov * p;
    auto [hi, lo] = symplectic_eigenvalues(cov_pt);
    (void)hi;
    return lo;
}

Mat2 rotation(double phi) {
    Mat2 r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
}

Mat2 squeeze(double xi) {
    Mat2 s;
    s << std::exp(-xi), 0.0, 0.0, std::exp(xi);
    return s;
}

Mat4 symplectic_inverse(const Mat4& s) {
    const Mat4& omega = symplectic_form();
    return -omega * s.transpose() * omega;
}

}  // namespace gaussres
