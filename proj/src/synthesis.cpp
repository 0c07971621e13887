#include "infolqg/synthesis.hpp"

#include <cmath>
#include <iostream>

#include "infolqg/linalg.hpp"

namespace infolqg {

using Eigen::MatrixXd;
using linalg::symmetrize;

Eigen::MatrixXd information_increment(const CovarianceSchedule& schedule,
                                      int t) {
  const MatrixXd& post = schedule.P_post.at(t);
  const MatrixXd& prior = schedule.P_prior.at(t);
  const int n = static_cast<int>(post.rows());
  Eigen::LLT<MatrixXd> llt_post(symmetrize(post));
  Eigen::LLT<MatrixXd> llt_prior(symmetrize(prior));
  if (llt_post.info() != Eigen::Success || llt_prior.info() != Eigen::Success) {
    throw NotPsdError("information_increment: covariances at step " +
                      std::to_string(t + 1) + " are not positive definite");
  }
  const MatrixXd eye = MatrixXd::Identity(n, n);
  MatrixXd delta = symmetrize(llt_post.solve(eye) - llt_prior.solve(eye));

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(delta);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double lam_max = std::max(0.0, lam.maxCoeff());
  // P_post <= P_prior guarantees delta >= 0 up to feasibility noise.
  const double neg_tol = 1e-9 * (1.0 + lam_max) +
                         1e-9 * (1.0 + linalg::max_eigenvalue(
                                           llt_post.solve(eye)));
  if (lam.minCoeff() < -neg_tol) {
    throw NotPsdError(
        "information_increment: increment at step " + std::to_string(t + 1) +
        " has negative eigenvalue " + std::to_string(lam.minCoeff()) +
        "; the schedule is infeasible");
  }
  double clamped = 0.0;
  Eigen::VectorXd lam_pos = lam;
  for (int i = 0; i < n; ++i) {
    if (lam_pos[i] < 0.0) {
      clamped = std::max(clamped, -lam_pos[i]);
      lam_pos[i] = 0.0;
    }
  }
  if (clamped > 1e-6 * (1.0 + lam_max)) {
    std::cerr << "information_increment: clamped eigenvalues by " << clamped
              << " at step " << t + 1 << "\n";
  }
  return symmetrize(es.eigenvectors() * lam_pos.asDiagonal() *
                    es.eigenvectors().transpose());
}

SensorFactors factor_sensor(const Eigen::MatrixXd& delta,
                            const RankTolerance& tol) {
  const int n = static_cast<int>(delta.rows());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(delta));
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const double lam_max = std::max(0.0, lam.maxCoeff());
  const double cut = std::max(tol.rel_threshold * lam_max, tol.abs_floor);

  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (lam[i] > cut) ++r;
  }
  SensorFactors out;
  out.r = r;
  out.C = MatrixXd(r, n);
  out.V = MatrixXd::Identity(r, r);
  for (int k = 0; k < r; ++k) {
    const int i = n - 1 - k;  // leading pairs first
    out.C.row(k) = std::sqrt(lam[i]) * es.eigenvectors().col(i).transpose();
  }
  return out;
}

std::vector<Eigen::MatrixXd> kalman_gains(
    const CovarianceSchedule& schedule, const std::vector<Eigen::MatrixXd>& C,
    const std::vector<Eigen::MatrixXd>& V) {
  const std::size_t T = schedule.P_prior.size();
  if (C.size() != T || V.size() != T) {
    throw std::invalid_argument("kalman_gains: sensor sequence length mismatch");
  }
  std::vector<MatrixXd> L(T);
  for (std::size_t t = 0; t < T; ++t) {
    const int n = static_cast<int>(schedule.P_prior[t].rows());
    const int r = static_cast<int>(C[t].rows());
    if (r == 0) {
      L[t] = MatrixXd(n, 0);
      continue;
    }
    const MatrixXd innov =
        symmetrize(C[t] * schedule.P_prior[t] * C[t].transpose() + V[t]);
    Eigen::LLT<MatrixXd> llt(innov);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error(
          "kalman_gains: singular innovation covariance at step " +
          std::to_string(t + 1));
    }
    // L = P C^T S^{-1} computed as (S^{-1} C P)^T.
    L[t] = llt.solve(C[t] * schedule.P_prior[t]).transpose();
  }
  return L;
}

std::vector<Eigen::MatrixXd> propagate_covariance(
    const ProblemSpec& spec, const SensorPolicy& policy,
    std::vector<Eigen::MatrixXd>* priors) {
  const int T = spec.horizon;
  std::vector<MatrixXd> post(T);
  if (priors) priors->resize(T);
  MatrixXd prior = spec.P_init;
  for (int t = 0; t < T; ++t) {
    if (priors) (*priors)[t] = prior;
    if (policy.r[t] == 0) {
      post[t] = prior;
    } else {
      const int n = static_cast<int>(prior.rows());
      Eigen::LLT<MatrixXd> llt_prior(symmetrize(prior));
      Eigen::LLT<MatrixXd> llt_v(symmetrize(policy.V[t]));
      MatrixXd info = llt_prior.solve(MatrixXd::Identity(n, n)) +
                      policy.C[t].transpose() * llt_v.solve(policy.C[t]);
      Eigen::LLT<MatrixXd> llt_info(symmetrize(info));
      post[t] = symmetrize(llt_info.solve(MatrixXd::Identity(n, n)));
    }
    if (t + 1 < T) {
      prior = symmetrize(spec.A[t] * post[t] * spec.A[t].transpose() +
                         spec.W[t]);
    }
  }
  return post;
}

double policy_roundtrip_error(const ProblemSpec& spec,
                              const SensorPolicy& policy,
                              const CovarianceSchedule& schedule) {
  const std::vector<MatrixXd> post = propagate_covariance(spec, policy);
  double worst = 0.0;
  for (int t = 0; t < spec.horizon; ++t) {
    const double denom = std::max(1.0, schedule.P_post[t].norm());
    worst = std::max(worst, (post[t] - schedule.P_post[t]).norm() / denom);
  }
  return worst;
}

SensorPolicy assemble_policy(const ProblemSpec& spec,
                             const RiccatiTables& tables,
                             const CovarianceSchedule& schedule,
                             const RankTolerance& tol) {
  const int T = spec.horizon;
  if (static_cast<int>(schedule.P_post.size()) != T ||
      static_cast<int>(tables.K.size()) != T) {
    throw std::invalid_argument("assemble_policy: input length mismatch");
  }
  SensorPolicy pol;
  pol.r.resize(T);
  pol.C.resize(T);
  pol.V.resize(T);
  pol.K = tables.K;
  for (int t = 0; t < T; ++t) {
    SensorFactors f = factor_sensor(information_increment(schedule, t), tol);
    pol.r[t] = f.r;
    pol.C[t] = std::move(f.C);
    pol.V[t] = std::move(f.V);
  }
  pol.L = kalman_gains(schedule, pol.C, pol.V);
  return pol;
}

}  // namespace infolqg
