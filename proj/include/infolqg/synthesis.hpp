#pragma once

#include <stdexcept>

#include "infolqg/model.hpp"

namespace infolqg {

struct NotPsdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical-rank rule for the per-step information increment. Eigenvalues of
// Delta_t below rel_threshold * lambda_max(Delta_t) are treated as zero,
// with abs_floor covering the lambda_max ~ 0 case.
struct RankTolerance {
  double rel_threshold = 1e-7;
  double abs_floor = 1e-12;
};

// Delta_t = P_post_t^{-1} - P_prior_t^{-1}, symmetrized, with negative
// eigenvalues inside tolerance clamped to zero. Throws NotPsdError when a
// negative eigenvalue is too large to be feasibility noise.
Eigen::MatrixXd information_increment(const CovarianceSchedule& schedule,
                                      int t);

struct SensorFactors {
  int r = 0;
  Eigen::MatrixXd C;  // r x n
  Eigen::MatrixXd V;  // r x r, identity in the canonical factorization
};

// Factor a PSD information increment as C^T V^{-1} C with numerical rank r.
// Canonical choice: eigendecompose delta, keep the r leading pairs, set
// C = Lambda_r^{1/2} U_r^T and V = I.
SensorFactors factor_sensor(const Eigen::MatrixXd& delta,
                            const RankTolerance& tol = {});

// L_t = P_prior_t C_t^T (C_t P_prior_t C_t^T + V_t)^{-1}; empty when r == 0.
std::vector<Eigen::MatrixXd> kalman_gains(
    const CovarianceSchedule& schedule, const std::vector<Eigen::MatrixXd>& C,
    const std::vector<Eigen::MatrixXd>& V);

// Bundle sensors, gains and controller into an executable policy. The
// realized covariance recursion reproduces the scheduled posteriors; the
// largest per-step deviation is available through policy_roundtrip_error.
SensorPolicy assemble_policy(const ProblemSpec& spec,
                             const RiccatiTables& tables,
                             const CovarianceSchedule& schedule,
                             const RankTolerance& tol = {});

// Runs the covariance recursion with the policy's sensors and returns the
// per-step posterior covariances (and optionally priors).
std::vector<Eigen::MatrixXd> propagate_covariance(
    const ProblemSpec& spec, const SensorPolicy& policy,
    std::vector<Eigen::MatrixXd>* priors = nullptr);

// Max over steps of ||P_rt - P_sched||_F / max(1, ||P_sched||_F).
double policy_roundtrip_error(const ProblemSpec& spec,
                              const SensorPolicy& policy,
                              const CovarianceSchedule& schedule);

}  // namespace infolqg
