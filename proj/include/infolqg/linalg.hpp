#pragma once

#include <Eigen/Dense>

// Small shared linear-algebra helpers. Everything here operates on dynamic
// matrices; callers own dimension checking.
namespace infolqg::linalg {

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// ||M - M^T||_inf relative to max(1, ||M||_inf).
double relative_asymmetry(const Eigen::MatrixXd& m);

double min_eigenvalue(const Eigen::MatrixXd& sym);
double max_eigenvalue(const Eigen::MatrixXd& sym);

// Scale-aware definiteness tests: smallest eigenvalue compared against
// delta * (1 + |largest eigenvalue|).
bool is_positive_definite(const Eigen::MatrixXd& sym, double delta = 1e-10);
bool is_positive_semidefinite(const Eigen::MatrixXd& sym, double delta = 1e-10);

// log det of a symmetric positive definite matrix via Cholesky.
// Throws std::runtime_error if the factorization fails.
double log_det_pd(const Eigen::MatrixXd& sym);

// Symmetric PSD square root via spectral factorization; negative eigenvalues
// are clamped to zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sym);

// --- svec machinery -------------------------------------------------------
//
// Symmetric matrices are flattened with the isometric vectorization
// (off-diagonals scaled by sqrt(2)) so that svec(M) . svec(N) = Tr(M N).
// Index order: column-major lower triangle, (i, j) with i >= j.

inline int svec_dim(int n) { return n * (n + 1) / 2; }

Eigen::VectorXd svec(const Eigen::MatrixXd& sym);
Eigen::MatrixXd smat(const Eigen::VectorXd& v, int n);

// Matrix of the linear map S |-> Y S Y^T between svec coordinates:
// out[k, l] = Tr(E_k Y E_l Y^T), with E_k the orthonormal symmetric basis.
// Y may be rectangular (rows x cols); out is svec_dim(rows) x svec_dim(cols).
// This is the (mixed) symmetric Kronecker product needed for barrier
// Hessian blocks.
Eigen::MatrixXd skron_map(const Eigen::MatrixXd& y);

}  // namespace infolqg::linalg
