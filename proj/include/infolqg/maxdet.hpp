#pragma once

#include "infolqg/model.hpp"

namespace infolqg {

struct SolverSettings {
  double tol_feasibility = 1e-8;
  double tol_optimality = 1e-7;  // relative duality-gap target
  int max_iterations = 200;      // total Newton steps across the barrier path
  double barrier_reduction = 0.2;  // gap shrink factor per outer stage
  // Regularization floor for Pi_t. Non-positive means automatic:
  // 1e-9 * trace(P_init) / n_1.
  double epsilon = 0.0;
};

// Covariance scheduling program over {P_post_t, Pi_t}:
//
//   minimize  sum_t [ 0.5 Tr(Theta_t P_post_t) - (gamma_t/2) log det Pi_t ]
//             + constant_C
//   s.t.      Pi_t >= eps I
//             P_post_1 <= P_init
//             P_post_{t+1} <= A_t P_post_t A_t^T + W_t
//             [ P_post_t - Pi_t      P_post_t A_t^T              ]
//             [ A_t P_post_t         W_t + A_t P_post_t A_t^T    ] >= 0
//
// for t up to T-1 where applicable; the terminal equality Pi_T = P_post_T is
// eliminated by substitution.
struct MaxDetProblem {
  int T = 0;
  std::vector<Eigen::MatrixXd> Theta;
  std::vector<Eigen::MatrixXd> A;
  std::vector<Eigen::MatrixXd> W;
  std::vector<double> gamma;
  Eigen::MatrixXd P_init;
  double epsilon = 0.0;
  double constant_C = 0.0;
  // 0.5 Tr(N_1 P_init) + 0.5 sum_t Tr(W_t S_t); the schedule-independent part
  // of the predicted control cost.
  double control_cost_base = 0.0;

  int state_dim(int t) const {
    return t == 0 ? static_cast<int>(P_init.rows())
                  : static_cast<int>(A[t - 1].rows());
  }
};

MaxDetProblem build_maxdet(const ProblemSpec& spec, const RiccatiTables& tables,
                           const SolverSettings& settings);

// Primal path-following barrier solve. Deterministic for fixed inputs.
// Never throws for a well-formed problem; if the iteration budget runs out
// the best iterate is returned with diag.status == "MaxIterations".
CovarianceSchedule solve_schedule(const MaxDetProblem& problem,
                                  const SolverSettings& settings);

struct KktReport {
  double stationarity_residual = 0.0;  // relative to the objective gradient
  double complementarity_gap = 0.0;
  double feasibility_residual = 0.0;  // min eigenvalue over constraint slacks
};

// Optimality diagnostics for a schedule. Solver-produced schedules carry
// their barrier weight, which fixes the dual multipliers; for other
// schedules a best-fit multiplier scale is used, so non-optimal points
// report large stationarity residuals.
KktReport kkt_report(const MaxDetProblem& problem,
                     const CovarianceSchedule& schedule);

// The inner maximizer over Pi for fixed P_post:
// (P_post^{-1} + A^T W^{-1} A)^{-1}.
Eigen::MatrixXd saturated_pi(const Eigen::MatrixXd& P_post,
                             const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& W);

}  // namespace infolqg
