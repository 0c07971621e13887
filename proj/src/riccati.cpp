#include "infolqg/riccati.hpp"

#include <cmath>
#include <stdexcept>

#include "infolqg/linalg.hpp"

namespace infolqg {

RiccatiTables riccati_backward(const ProblemSpec& spec) {
  const int T = spec.horizon;
  RiccatiTables tab;
  tab.S.resize(T);
  tab.M.resize(T);
  tab.N.resize(T);
  tab.K.resize(T);
  tab.Theta.resize(T);

  Eigen::MatrixXd N_next;  // N[t+1] from the previous iteration
  for (int t = T - 1; t >= 0; --t) {
    const Eigen::MatrixXd& A = spec.A[t];
    const Eigen::MatrixXd& B = spec.B[t];

    Eigen::MatrixXd S = spec.Q[t];
    if (t < T - 1) S += N_next;
    S = linalg::symmetrize(S);

    Eigen::MatrixXd M = linalg::symmetrize(B.transpose() * S * B + spec.R[t]);
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error(
          "riccati_backward: M_" + std::to_string(t + 1) +
          " is not positive definite; the problem data were not validated");
    }

    // K = -M^{-1} B^T S A via the Cholesky factor.
    Eigen::MatrixXd BtSA = B.transpose() * S * A;
    Eigen::MatrixXd K = -llt.solve(BtSA);
    Eigen::MatrixXd N =
        linalg::symmetrize(A.transpose() * S * A + BtSA.transpose() * K);
    Eigen::MatrixXd Theta = linalg::symmetrize(K.transpose() * M * K);

    tab.S[t] = S;
    tab.M[t] = M;
    tab.N[t] = N;
    tab.K[t] = K;
    tab.Theta[t] = Theta;
    N_next = N;
  }
  return tab;
}

double analytic_min_control_cost(const ProblemSpec& spec,
                                 const RiccatiTables& tables,
                                 const std::vector<Eigen::MatrixXd>& P_post) {
  const int T = spec.horizon;
  if (static_cast<int>(tables.S.size()) != T ||
      static_cast<int>(P_post.size()) != T) {
    throw std::invalid_argument(
        "analytic_min_control_cost: table/schedule length mismatch");
  }
  if (tables.N[0].rows() != spec.P_init.rows()) {
    throw std::invalid_argument(
        "analytic_min_control_cost: N_1 does not match P_init");
  }
  double cost = 0.5 * (tables.N[0] * spec.P_init).trace();
  for (int t = 0; t < T; ++t) {
    if (tables.Theta[t].rows() != P_post[t].rows()) {
      throw std::invalid_argument(
          "analytic_min_control_cost: Theta_" + std::to_string(t + 1) +
          " does not match P_post");
    }
    cost += 0.5 * (spec.W[t] * tables.S[t]).trace();
    cost += 0.5 * (tables.Theta[t] * P_post[t]).trace();
  }
  return cost;
}

double analytic_min_control_cost(const ProblemSpec& spec,
                                 const RiccatiTables& tables,
                                 const CovarianceSchedule& schedule) {
  return analytic_min_control_cost(spec, tables, schedule.P_post);
}

double constant_C(const ProblemSpec& spec, const RiccatiTables& tables) {
  const int T = spec.horizon;
  double c = 0.0;
  for (int t = 0; t + 1 < T; ++t) {
    const double n_t = spec.state_dim(t);
    c += 0.5 * spec.gamma[t] * n_t * std::log(spec.gamma[t + 1] / spec.gamma[t]);
    c += 0.5 * spec.gamma[t] * linalg::log_det_pd(spec.W[t]);
  }
  c += 0.5 * spec.gamma[0] * linalg::log_det_pd(spec.P_init);
  c += 0.5 * (tables.N[0] * spec.P_init).trace();
  for (int t = 0; t < T; ++t) {
    c += 0.5 * (spec.W[t] * tables.S[t]).trace();
  }
  return c;
}

double constant_C(const ProblemSpec& spec) {
  return constant_C(spec, riccati_backward(spec));
}

}  // namespace infolqg
