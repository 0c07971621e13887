#include "infolqg/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace infolqg::linalg {

double relative_asymmetry(const Eigen::MatrixXd& m) {
  const double denom = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / denom;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(sym),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(sym),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_positive_definite(const Eigen::MatrixXd& sym, double delta) {
  if (sym.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(sym),
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() > delta * (1.0 + largest);
}

bool is_positive_semidefinite(const Eigen::MatrixXd& sym, double delta) {
  if (sym.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(sym),
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() >= -delta * (1.0 + largest);
}

double log_det_pd(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(symmetrize(sym));
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("log_det_pd: matrix is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return sym;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(sym));
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::VectorXd svec(const Eigen::MatrixXd& sym) {
  static const double kSqrt2 = std::sqrt(2.0);
  const int n = static_cast<int>(sym.rows());
  Eigen::VectorXd v(svec_dim(n));
  int k = 0;
  for (int j = 0; j < n; ++j) {
    v[k++] = sym(j, j);
    for (int i = j + 1; i < n; ++i) v[k++] = kSqrt2 * sym(i, j);
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, int n) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd m(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    m(j, j) = v[k++];
    for (int i = j + 1; i < n; ++i) {
      m(i, j) = m(j, i) = kInvSqrt2 * v[k++];
    }
  }
  return m;
}

Eigen::MatrixXd skron_map(const Eigen::MatrixXd& y) {
  static const double kSqrt2 = std::sqrt(2.0);
  const int rows = static_cast<int>(y.rows());
  const int cols = static_cast<int>(y.cols());
  Eigen::MatrixXd out(svec_dim(rows), svec_dim(cols));
  int l = 0;
  for (int j = 0; j < cols; ++j) {
    // E_l = e_j e_j^T: Y E_l Y^T = y_j y_j^T.
    out.col(l++) = svec(y.col(j) * y.col(j).transpose());
    for (int i = j + 1; i < cols; ++i) {
      // E_l = (e_i e_j^T + e_j e_i^T) / sqrt(2).
      Eigen::MatrixXd m =
          (y.col(i) * y.col(j).transpose() + y.col(j) * y.col(i).transpose()) /
          kSqrt2;
      out.col(l++) = svec(m);
    }
  }
  return out;
}

}  // namespace infolqg::linalg
