#ifndef GAUSSRES_SYMPLECTIC_HPP
#define GAUSSRES_SYMPLECTIC_HPP

#include <array>
#include <utility>

#include <Eigen/Core>

namespace gaussres {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

// Quadrature ordering is (q1, p1, q2, p2) with [q, p] = 2i, so the vacuum
// covariance matrix is the identity.

/// Two-mode symplectic form: block-diagonal copies of [[0,1],[-1,0]].
const Mat4& symplectic_form();

/// Two-mode Gaussian state. The covariance is symmetrized on construction and
/// must be physical: all eigenvalues of cov + i*Omega >= -1e-9.
struct GaussianState {
    Vec4 mean;
    Mat4 cov;

    GaussianState(const Vec4& mean_in, const Mat4& cov_in);
};

/// True iff min eigenvalue of cov + i*Omega >= -tol. Throws on input with
/// asymmetry beyond 1e-9.
bool is_physical(const Mat4& cov, double tol = 1e-9);

/// Moduli of the eigenvalues of i*Omega*cov, sorted descending. Each is doubly
/// degenerate; a broken degeneracy pattern signals numerical breakdown and
/// throws.
std::pair<double, double> symplectic_eigenvalues(const Mat4& cov);

struct WilliamsonDecomposition {
    Mat4 s;                      // symplectic: s * Omega * s^T = Omega
    std::array<double, 2> nu;    // symplectic eigenvalues, descending

    Mat4 normal_form() const;    // diag(nu0, nu0, nu1, nu1)
    Mat4 reconstruct() const;    // s * normal_form * s^T
};

/// V = S (nu+ I2 (+) nu- I2) S^T with S symplectic. Deterministic for fixed
/// input; degenerate nu+ ~ nu- returns some valid symplectic basis.
WilliamsonDecomposition williamson(const Mat4& cov);

/// Smallest symplectic eigenvalue of the partial transpose (p2 -> -p2).
/// A value < 1 certifies entanglement between the two modes.
double ppt_min_symplectic_eigenvalue(const Mat4& cov);

Mat2 rotation(double phi);   // [[cos, -sin], [sin, cos]]
Mat2 squeeze(double xi);     // diag(e^-xi, e^xi)

/// Exact inverse of a symplectic matrix: S^-1 = -Omega S^T Omega.
Mat4 symplectic_inverse(const Mat4& s);

namespace detail {

// Dynamic-size versions used by the fidelity machinery, which works on
// embedded states with more than two modes. Not part of the public contract.
Eigen::VectorXd symplectic_eigenvalues_n(const Eigen::MatrixXd& cov);
void williamson_n(const Eigen::MatrixXd& cov, Eigen::MatrixXd& s, Eigen::VectorXd& nu);
Eigen::MatrixXd symplectic_form_n(int n_modes);

}  // namespace detail

}  // namespace gaussres

#endif
