#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace infolqg {

// Finite-horizon linear-Gaussian control problem with a per-step price on
// acquired information. Steps are 0-based internally: the plant is
//   x_{t+1} = A[t] x_t + B[t] u_t + w_t,   t = 0..T-1,
// with x_0 ~ N(0, P_init) and w_t ~ N(0, W[t]). Stage cost is
//   0.5 (|x_{t+1}|^2_{Q[t]} + |u_t|^2_{R[t]}),
// and each step pays gamma[t] per nat of information the sensor acquires.
// Dimensions may vary over time; A[t] maps state_dim(t) -> state_dim(t+1).
struct ProblemSpec {
  int horizon = 0;  // T
  std::vector<Eigen::MatrixXd> A;
  std::vector<Eigen::MatrixXd> B;
  std::vector<Eigen::MatrixXd> W;
  std::vector<Eigen::MatrixXd> Q;
  std::vector<Eigen::MatrixXd> R;
  std::vector<double> gamma;
  Eigen::MatrixXd P_init;

  // Dimension of x_t, t = 0..T.
  int state_dim(int t) const {
    return t == 0 ? static_cast<int>(P_init.rows())
                  : static_cast<int>(A[t - 1].rows());
  }
  // Dimension of u_t, t = 0..T-1.
  int input_dim(int t) const { return static_cast<int>(B[t].cols()); }
};

struct Violation {
  std::string field;  // e.g. "W_1" (1-based step in the name)
  int step = 0;       // 0-based step index, -1 if not step-specific
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Pure check of the ProblemSpec invariants: shapes consistent, W_t and R_t
// and P_init positive definite, Q_t positive semidefinite, gamma_t > 0,
// symmetric inputs symmetric within 1e-9 relative. Violations are data,
// not faults.
ValidationResult validate_problem(const ProblemSpec& spec);

// Symmetrizes the symmetric-by-contract members in place when their
// asymmetry is below the validation threshold (serialization round-trip
// noise); larger asymmetry is left for validate_problem to flag.
void canonicalize(ProblemSpec& spec);

// Backward-recursion outputs, indexed by step t = 0..T-1.
//   S[t]  cost-to-go weight on x_{t+1}
//   M[t]  input-space curvature B^T S B + R
//   N[t]  cost-to-go weight pulled back to x_t
//   K[t]  optimal feedback gain (u = K xhat)
//   Theta[t] = K^T M K, the price of state-estimate error
struct RiccatiTables {
  std::vector<Eigen::MatrixXd> S, M, N, K, Theta;
};

struct SolverDiagnostics {
  int iterations = 0;
  bool converged = false;
  std::string status;             // "Converged" or "MaxIterations"
  double feasibility_residual = 0.0;   // min eigenvalue over constraint slacks
  double optimality_residual = 0.0;    // relative duality-gap bound
  double stationarity_residual = 0.0;  // relative KKT gradient residual
  double complementarity_gap = 0.0;
  double barrier_weight = 0.0;  // final 1/kappa of the barrier path
};

// Posterior/auxiliary covariance sequence chosen by the scheduler, plus the
// value split into its information and control parts. Indexed t = 0..T-1;
// P_prior[0] == P_init and Pi[T-1] == P_post[T-1].
struct CovarianceSchedule {
  std::vector<Eigen::MatrixXd> P_post;
  std::vector<Eigen::MatrixXd> Pi;
  std::vector<Eigen::MatrixXd> P_prior;
  double objective_value = 0.0;
  double info_cost = 0.0;  // nats
  double control_cost_predicted = 0.0;
  SolverDiagnostics diag;
  // Last strictly interior iterate of the barrier path, kept for KKT
  // diagnostics (the reported schedule saturates constraint faces where
  // barrier multipliers are undefined). Not serialized.
  std::vector<Eigen::MatrixXd> barrier_P, barrier_Pi;
};

// Executable joint design: per-step sensing dimension r[t], sensor matrices
// C[t] (r x n) and V[t] (r x r, diagonal PD), Kalman gains L[t] (n x r), and
// control gains K[t]. r[t] == 0 means no measurement at step t and the
// corresponding matrices are empty.
struct SensorPolicy {
  std::vector<int> r;
  std::vector<Eigen::MatrixXd> C, V, L, K;
};

struct Trajectory {
  std::uint64_t trial = 0;
  std::vector<Eigen::VectorXd> x, xhat, u, y;
};

struct SimulationReport {
  std::int64_t num_trials = 0;
  double empirical_control_cost = 0.0;
  double empirical_control_cost_se = 0.0;
  double predicted_control_cost = 0.0;
  std::vector<double> info_rates;  // nats per step, from the covariance recursion
  double total_info_cost = 0.0;    // nats; +inf for the full-observation baseline
  std::vector<Eigen::MatrixXd> filter_error_cov;  // sample cov of x - xhat
  std::vector<Trajectory> trajectories;
};

}  // namespace infolqg
