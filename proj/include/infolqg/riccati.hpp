#pragma once

#include "infolqg/model.hpp"

namespace infolqg {

// Backward Riccati recursion for the certainty-equivalence controller:
//   S[T-1] = Q[T-1],          S[t] = Q[t] + N[t+1]
//   M[t]   = B^T S B + R
//   N[t]   = A^T (S - S B M^{-1} B^T S) A
//   K[t]   = -M^{-1} B^T S A
//   Theta[t] = K^T M K
// M is inverted through its Cholesky factor; outputs are symmetrized each
// step. Throws std::runtime_error if M[t] is not numerically positive
// definite (only possible when validation was bypassed).
RiccatiTables riccati_backward(const ProblemSpec& spec);

// Minimum achievable control cost for a fixed posterior-covariance sequence:
//   0.5 Tr(N_1 P_init) + 0.5 sum_t [Tr(W_t S_t) + Tr(Theta_t P_post_t)].
// Throws std::invalid_argument on dimension mismatch.
double analytic_min_control_cost(const ProblemSpec& spec,
                                 const RiccatiTables& tables,
                                 const CovarianceSchedule& schedule);
double analytic_min_control_cost(const ProblemSpec& spec,
                                 const RiccatiTables& tables,
                                 const std::vector<Eigen::MatrixXd>& P_post);

// The additive constant that completes the scheduling objective. Natural
// logarithms throughout.
double constant_C(const ProblemSpec& spec, const RiccatiTables& tables);
double constant_C(const ProblemSpec& spec);

}  // namespace infolqg
