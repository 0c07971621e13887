#include "infolqg/maxdet.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "infolqg/linalg.hpp"
#include "infolqg/riccati.hpp"

namespace infolqg {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using linalg::skron_map;
using linalg::smat;
using linalg::svec;
using linalg::svec_dim;
using linalg::symmetrize;

// Relative slack size below which a chain/initial bound is treated as active
// and snapped to exact equality after the barrier path terminates.
constexpr double kSnapTol = 1e-6;

// Variable layout. Step group t < T-1 holds [svec(P_t); svec(Pi_t)], the
// terminal group holds svec(P_{T-1}) only (Pi_T is eliminated). The Hessian
// is block tridiagonal in these groups: steps couple only through the chain
// constraint P_{t+1} <= A_t P_t A_t^T + W_t.
struct Layout {
  int T = 0;
  std::vector<int> n;        // state dim per step
  std::vector<int> q;        // svec dim per step
  std::vector<int> grp_off;  // group offsets in the stacked vector
  std::vector<int> grp_sz;
  int total = 0;

  bool has_pi(int t) const { return t < T - 1; }
  int p_off(int t) const { return grp_off[t]; }
  int pi_off(int t) const { return grp_off[t] + q[t]; }
};

Layout make_layout(const MaxDetProblem& pb) {
  Layout lay;
  lay.T = pb.T;
  lay.n.resize(pb.T);
  lay.q.resize(pb.T);
  lay.grp_off.resize(pb.T);
  lay.grp_sz.resize(pb.T);
  int off = 0;
  for (int t = 0; t < pb.T; ++t) {
    lay.n[t] = pb.state_dim(t);
    lay.q[t] = svec_dim(lay.n[t]);
    lay.grp_off[t] = off;
    lay.grp_sz[t] = (t < pb.T - 1) ? 2 * lay.q[t] : lay.q[t];
    off += lay.grp_sz[t];
  }
  lay.total = off;
  return lay;
}

struct Point {
  std::vector<MatrixXd> P;   // T entries
  std::vector<MatrixXd> Pi;  // T-1 entries
};

// Strictly feasible start: halve the no-sensing covariance recursion and the
// inner Pi bound.
Point initial_point(const MaxDetProblem& pb) {
  Point pt;
  pt.P.resize(pb.T);
  pt.Pi.resize(pb.T > 0 ? pb.T - 1 : 0);
  pt.P[0] = 0.5 * pb.P_init;
  for (int t = 0; t + 1 < pb.T; ++t) {
    pt.P[t + 1] =
        symmetrize(0.5 * (pb.A[t] * pt.P[t] * pb.A[t].transpose() + pb.W[t]));
  }
  for (int t = 0; t + 1 < pb.T; ++t) {
    pt.Pi[t] = symmetrize(0.5 * saturated_pi(pt.P[t], pb.A[t], pb.W[t]));
  }
  return pt;
}

struct CholeskyBlock {
  Eigen::LLT<MatrixXd> llt;
  MatrixXd mat;
  int order = 0;
  bool ok = false;
  double log_det = 0.0;

  void factor(const MatrixXd& s) {
    mat = symmetrize(s);
    order = static_cast<int>(s.rows());
    llt.compute(mat);
    ok = (llt.info() == Eigen::Success);
    if (ok) {
      log_det =
          2.0 * llt.matrixLLT().diagonal().array().log().sum();
      if (!std::isfinite(log_det)) ok = false;
    }
  }
  MatrixXd inverse() const {
    return llt.solve(MatrixXd::Identity(order, order));
  }
};

// All barrier slack blocks at a point. `ok` is false as soon as any block
// fails its Cholesky test, which is how infeasible line-search candidates
// are rejected.
struct Slacks {
  CholeskyBlock init;                // P_init - P_0
  std::vector<CholeskyBlock> H;      // T-1 sensing LMIs
  std::vector<CholeskyBlock> F;      // T-1 chain slacks
  std::vector<CholeskyBlock> Epi;    // T-1 Pi floors
  CholeskyBlock term;                // P_{T-1} - eps I
  std::vector<CholeskyBlock> Pi_pd;  // T-1 Pi factors (objective log dets)
  CholeskyBlock P_last;              // P_{T-1} factor (objective log det)
  bool ok = false;
};

MatrixXd sensing_lmi(const MatrixXd& P, const MatrixXd& Pi, const MatrixXd& A,
                     const MatrixXd& W) {
  const int n = static_cast<int>(P.rows());
  const int m = static_cast<int>(A.rows());
  MatrixXd h(n + m, n + m);
  h.topLeftCorner(n, n) = P - Pi;
  h.topRightCorner(n, m) = P * A.transpose();
  h.bottomLeftCorner(m, n) = A * P;
  h.bottomRightCorner(m, m) = W + A * P * A.transpose();
  return symmetrize(h);
}

Slacks compute_slacks(const MaxDetProblem& pb, const Point& pt) {
  const int T = pb.T;
  Slacks s;
  s.H.resize(T - 1);
  s.F.resize(T - 1);
  s.Epi.resize(T - 1);
  s.Pi_pd.resize(T - 1);
  s.ok = true;

  const int n_last = pb.state_dim(T - 1);
  s.init.factor(pb.P_init - pt.P[0]);
  s.ok = s.ok && s.init.ok;
  s.term.factor(pt.P[T - 1] -
                pb.epsilon * MatrixXd::Identity(n_last, n_last));
  s.ok = s.ok && s.term.ok;
  s.P_last.factor(pt.P[T - 1]);
  s.ok = s.ok && s.P_last.ok;

  for (int t = 0; t + 1 < T && s.ok; ++t) {
    const int n_t = pb.state_dim(t);
    s.H[t].factor(sensing_lmi(pt.P[t], pt.Pi[t], pb.A[t], pb.W[t]));
    s.F[t].factor(pb.A[t] * pt.P[t] * pb.A[t].transpose() + pb.W[t] -
                  pt.P[t + 1]);
    s.Epi[t].factor(pt.Pi[t] - pb.epsilon * MatrixXd::Identity(n_t, n_t));
    s.Pi_pd[t].factor(pt.Pi[t]);
    s.ok = s.ok && s.H[t].ok && s.F[t].ok && s.Epi[t].ok && s.Pi_pd[t].ok;
  }
  return s;
}

// Sum of barrier block orders; parameter of the log-det barrier.
double barrier_nu(const MaxDetProblem& pb) {
  double nu = pb.state_dim(0);          // init block
  nu += pb.state_dim(pb.T - 1);         // terminal eps floor
  for (int t = 0; t + 1 < pb.T; ++t) {
    nu += pb.state_dim(t) + pb.state_dim(t + 1);  // sensing LMI
    nu += pb.state_dim(t + 1);                    // chain slack
    nu += pb.state_dim(t);                        // Pi floor
  }
  return nu;
}

// Normalized objective (without the additive constant):
//   f_hat = [ sum 0.5 Tr(Theta P) - sum (gamma/2) log det Pi ] / scale.
double objective_hat(const MaxDetProblem& pb, const Point& pt,
                     const Slacks& slacks, double scale) {
  double f = 0.0;
  for (int t = 0; t < pb.T; ++t) f += 0.5 * (pb.Theta[t] * pt.P[t]).trace();
  for (int t = 0; t + 1 < pb.T; ++t) {
    f -= 0.5 * pb.gamma[t] * slacks.Pi_pd[t].log_det;
  }
  f -= 0.5 * pb.gamma[pb.T - 1] * slacks.P_last.log_det;
  return f / scale;
}

double barrier_phi(const MaxDetProblem& pb, const Slacks& s) {
  double phi = -s.init.log_det - s.term.log_det;
  for (int t = 0; t + 1 < pb.T; ++t) {
    phi -= s.H[t].log_det + s.F[t].log_det + s.Epi[t].log_det;
  }
  return phi;
}

struct NewtonSystem {
  std::vector<MatrixXd> D;  // diagonal group blocks
  std::vector<MatrixXd> E;  // E[t]: coupling group t -> t+1
  VectorXd g;               // gradient of psi = kappa f_hat + phi
  VectorXd g_obj;           // gradient of f_hat alone
};

// Builds gradient and block-tridiagonal Hessian of
//   psi = kappa * f_hat + phi
// at a strictly feasible point with freshly factored slacks.
void assemble(const MaxDetProblem& pb, const Layout& lay, const Point& pt,
              const Slacks& sl, double kappa, double scale, NewtonSystem& sys) {
  const int T = pb.T;
  sys.D.assign(T, MatrixXd());
  sys.E.assign(T > 0 ? T - 1 : 0, MatrixXd());
  sys.g = VectorXd::Zero(lay.total);
  sys.g_obj = VectorXd::Zero(lay.total);
  for (int t = 0; t < T; ++t) {
    sys.D[t] = MatrixXd::Zero(lay.grp_sz[t], lay.grp_sz[t]);
    if (t + 1 < T) {
      sys.E[t] = MatrixXd::Zero(lay.grp_sz[t], lay.grp_sz[t + 1]);
    }
  }

  auto gseg = [&](int off, int len) { return sys.g.segment(off, len); };

  // Objective: linear Theta term plus its own log-det barriers.
  for (int t = 0; t < T; ++t) {
    sys.g_obj.segment(lay.p_off(t), lay.q[t]) +=
        (0.5 / scale) * svec(pb.Theta[t]);
  }
  for (int t = 0; t + 1 < T; ++t) {
    const MatrixXd pi_inv = sl.Pi_pd[t].inverse();
    const double w = 0.5 * pb.gamma[t] / scale;
    sys.g_obj.segment(lay.pi_off(t), lay.q[t]) -= w * svec(pi_inv);
    sys.D[t].block(lay.q[t], lay.q[t], lay.q[t], lay.q[t]) +=
        (kappa * w) * skron_map(symmetrize(pi_inv));
  }
  {
    const int t = T - 1;
    const MatrixXd p_inv = sl.P_last.inverse();
    const double w = 0.5 * pb.gamma[t] / scale;
    sys.g_obj.segment(lay.p_off(t), lay.q[t]) -= w * svec(p_inv);
    sys.D[t].block(0, 0, lay.q[t], lay.q[t]) +=
        (kappa * w) * skron_map(symmetrize(p_inv));
  }
  sys.g = kappa * sys.g_obj;

  // Initial bound P_0 <= P_init.
  {
    const MatrixXd s_inv = sl.init.inverse();
    gseg(lay.p_off(0), lay.q[0]) += svec(s_inv);
    sys.D[0].block(0, 0, lay.q[0], lay.q[0]) += skron_map(symmetrize(s_inv));
  }
  // Terminal floor P_{T-1} >= eps I.
  {
    const int t = T - 1;
    const MatrixXd s_inv = sl.term.inverse();
    gseg(lay.p_off(t), lay.q[t]) -= svec(s_inv);
    sys.D[t].block(0, 0, lay.q[t], lay.q[t]) += skron_map(symmetrize(s_inv));
  }

  for (int t = 0; t + 1 < T; ++t) {
    const int n_t = lay.n[t];
    const int q_t = lay.q[t];
    const int q_next = lay.q[t + 1];
    const MatrixXd& A = pb.A[t];

    // Pi floor.
    {
      const MatrixXd s_inv = sl.Epi[t].inverse();
      gseg(lay.pi_off(t), q_t) -= svec(s_inv);
      sys.D[t].block(q_t, q_t, q_t, q_t) += skron_map(symmetrize(s_inv));
    }
    // Chain slack A P_t A^T + W - P_{t+1} >= 0.
    {
      const MatrixXd s_inv = sl.F[t].inverse();
      const MatrixXd y_pp = symmetrize(A.transpose() * s_inv * A);
      gseg(lay.p_off(t), q_t) -= svec(y_pp);
      gseg(lay.p_off(t + 1), q_next) += svec(symmetrize(s_inv));
      sys.D[t].block(0, 0, q_t, q_t) += skron_map(y_pp);
      sys.D[t + 1].block(0, 0, q_next, q_next) +=
          skron_map(symmetrize(s_inv));
      sys.E[t].block(0, 0, q_t, q_next) -=
          skron_map(A.transpose() * s_inv);
    }
    // Sensing LMI. Derivative maps are congruences with
    // G_P = [I; A] and G_Pi = -[I; 0].
    {
      const MatrixXd s_inv = sl.H[t].inverse();
      const int m = lay.n[t + 1];
      const MatrixXd s11 = s_inv.topLeftCorner(n_t, n_t);
      const MatrixXd s12 = s_inv.topRightCorner(n_t, m);
      const MatrixXd s21 = s_inv.bottomLeftCorner(m, n_t);
      const MatrixXd s22 = s_inv.bottomRightCorner(m, m);
      const MatrixXd y_p = symmetrize(s11 + s12 * A + A.transpose() * s21 +
                                      A.transpose() * s22 * A);
      const MatrixXd y_pi = symmetrize(s11);
      const MatrixXd y_cross = s11 + A.transpose() * s21;  // G_P^T S^-1 G_Pi

      gseg(lay.p_off(t), q_t) -= svec(y_p);
      gseg(lay.pi_off(t), q_t) += svec(y_pi);
      sys.D[t].block(0, 0, q_t, q_t) += skron_map(y_p);
      sys.D[t].block(q_t, q_t, q_t, q_t) += skron_map(y_pi);
      const MatrixXd cross = -skron_map(y_cross);
      sys.D[t].block(0, q_t, q_t, q_t) += cross;
      sys.D[t].block(q_t, 0, q_t, q_t) += cross.transpose();
    }
  }
}

// Solves the block-tridiagonal Newton system H x = g and returns
// dz = -x along with lambda^2 = g^T x.
void solve_newton(const Layout& lay, NewtonSystem& sys, VectorXd& dz,
                  double& lambda2) {
  const int T = lay.T;
  std::vector<Eigen::LDLT<MatrixXd>> fact(T);
  std::vector<MatrixXd> uinv_e(T > 0 ? T - 1 : 0);

  MatrixXd u = sys.D[0];
  for (int t = 0;; ++t) {
    Eigen::LDLT<MatrixXd> ldlt(u);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      const double ridge =
          1e-12 * (1.0 + u.cwiseAbs().maxCoeff());
      ldlt.compute(u + ridge * MatrixXd::Identity(u.rows(), u.cols()));
    }
    fact[t] = ldlt;
    if (t + 1 >= T) break;
    uinv_e[t] = fact[t].solve(sys.E[t]);
    u = sys.D[t + 1] - sys.E[t].transpose() * uinv_e[t];
  }

  // Forward elimination uses (U^{-1} E)^T = E^T U^{-1}; U is symmetric.
  std::vector<VectorXd> c(T);
  c[0] = sys.g.segment(lay.grp_off[0], lay.grp_sz[0]);
  for (int t = 1; t < T; ++t) {
    c[t] = sys.g.segment(lay.grp_off[t], lay.grp_sz[t]) -
           uinv_e[t - 1].transpose() * c[t - 1];
  }
  std::vector<VectorXd> x(T);
  x[T - 1] = fact[T - 1].solve(c[T - 1]);
  for (int t = T - 2; t >= 0; --t) {
    x[t] = fact[t].solve(c[t] - sys.E[t] * x[t + 1]);
  }

  dz = VectorXd(lay.total);
  lambda2 = 0.0;
  for (int t = 0; t < T; ++t) {
    dz.segment(lay.grp_off[t], lay.grp_sz[t]) = -x[t];
    lambda2 += sys.g.segment(lay.grp_off[t], lay.grp_sz[t]).dot(x[t]);
  }
}

void apply_step(const Layout& lay, const Point& base, const VectorXd& dz,
                double alpha, Point& out) {
  out.P.resize(lay.T);
  out.Pi.resize(lay.T > 0 ? lay.T - 1 : 0);
  for (int t = 0; t < lay.T; ++t) {
    out.P[t] =
        base.P[t] + alpha * smat(dz.segment(lay.p_off(t), lay.q[t]), lay.n[t]);
    if (lay.has_pi(t)) {
      out.Pi[t] = base.Pi[t] +
                  alpha * smat(dz.segment(lay.pi_off(t), lay.q[t]), lay.n[t]);
    }
  }
}

}  // namespace

Eigen::MatrixXd saturated_pi(const Eigen::MatrixXd& P_post,
                             const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& W) {
  const int n = static_cast<int>(P_post.rows());
  Eigen::LLT<MatrixXd> llt_p(symmetrize(P_post));
  Eigen::LLT<MatrixXd> llt_w(symmetrize(W));
  if (llt_p.info() != Eigen::Success || llt_w.info() != Eigen::Success) {
    throw std::runtime_error("saturated_pi: inputs must be positive definite");
  }
  MatrixXd x = llt_p.solve(MatrixXd::Identity(n, n)) +
               A.transpose() * llt_w.solve(A);
  Eigen::LLT<MatrixXd> llt_x(symmetrize(x));
  if (llt_x.info() != Eigen::Success) {
    throw std::runtime_error("saturated_pi: information matrix not PD");
  }
  return symmetrize(llt_x.solve(MatrixXd::Identity(n, n)));
}

MaxDetProblem build_maxdet(const ProblemSpec& spec, const RiccatiTables& tables,
                           const SolverSettings& settings) {
  MaxDetProblem pb;
  pb.T = spec.horizon;
  pb.Theta = tables.Theta;
  pb.A = spec.A;
  pb.W = spec.W;
  pb.gamma = spec.gamma;
  pb.P_init = spec.P_init;
  pb.epsilon = settings.epsilon > 0.0
                   ? settings.epsilon
                   : 1e-9 * spec.P_init.trace() /
                         static_cast<double>(spec.P_init.rows());
  pb.constant_C = constant_C(spec, tables);
  pb.control_cost_base = 0.5 * (tables.N[0] * spec.P_init).trace();
  for (int t = 0; t < pb.T; ++t) {
    pb.control_cost_base += 0.5 * (spec.W[t] * tables.S[t]).trace();
  }
  return pb;
}

CovarianceSchedule solve_schedule(const MaxDetProblem& pb,
                                  const SolverSettings& settings) {
  const int T = pb.T;
  if (T < 1) throw std::invalid_argument("solve_schedule: empty problem");
  const Layout lay = make_layout(pb);
  const double nu = barrier_nu(pb);

  Point pt = initial_point(pb);
  Slacks sl = compute_slacks(pb, pt);
  if (!sl.ok) {
    // Cannot happen for validated problem data with a small epsilon floor.
    throw std::runtime_error(
        "solve_schedule: initial point is not strictly feasible; epsilon is "
        "too large for this problem");
  }

  // Objective scale: sum of the magnitudes of both cost channels at the
  // start, so kappa * f_hat stays in a floating-point-friendly range even
  // for extreme gamma.
  double scale = 1.0;
  {
    double mag = 0.0;
    for (int t = 0; t < T; ++t) mag += 0.5 * (pb.Theta[t] * pt.P[t]).trace();
    for (int t = 0; t + 1 < T; ++t) {
      mag += 0.5 * pb.gamma[t] * std::abs(sl.Pi_pd[t].log_det);
    }
    mag += 0.5 * pb.gamma[T - 1] * std::abs(sl.P_last.log_det);
    scale = std::max(1.0, mag);
  }

  const double gap_tol = settings.tol_optimality;
  const double kappa_final = nu / gap_tol;
  double f_hat = objective_hat(pb, pt, sl, scale);
  double phi = barrier_phi(pb, sl);
  double kappa = std::max(1e-6, 1e-2 * nu / (1.0 + std::abs(f_hat)));

  int newton_steps = 0;
  bool budget_exhausted = false;
  NewtonSystem sys;
  VectorXd dz;

  bool final_stage = false;
  while (true) {
    if (kappa >= kappa_final) {
      kappa = kappa_final;
      final_stage = true;
    }
    const double lambda_tol = final_stage ? 1e-9 : 1e-4;
    for (int inner = 0; inner < 60; ++inner) {
      if (newton_steps >= settings.max_iterations) {
        budget_exhausted = true;
        break;
      }
      assemble(pb, lay, pt, sl, kappa, scale, sys);
      double lambda2 = 0.0;
      solve_newton(lay, sys, dz, lambda2);
      if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) break;
      const double lambda = std::sqrt(lambda2);
      if (lambda <= lambda_tol) break;
      ++newton_steps;

      const double psi_cur = kappa * f_hat + phi;
      double alpha = 1.0;
      bool accepted = false;
      Point cand;
      for (int bt = 0; bt < 60; ++bt) {
        apply_step(lay, pt, dz, alpha, cand);
        Slacks cand_sl = compute_slacks(pb, cand);
        if (cand_sl.ok) {
          const double cand_f = objective_hat(pb, cand, cand_sl, scale);
          const double cand_phi = barrier_phi(pb, cand_sl);
          const double cand_psi = kappa * cand_f + cand_phi;
          const double fp_slop =
              64.0 * std::numeric_limits<double>::epsilon() *
              (1.0 + std::abs(psi_cur));
          // Pure Newton steps are safe once the decrement is small; larger
          // steps must make Armijo progress.
          const bool armijo =
              lambda <= 0.5
                  ? cand_psi <= psi_cur + fp_slop
                  : cand_psi <= psi_cur - 1e-4 * alpha * lambda2 + fp_slop;
          if (armijo) {
            pt = std::move(cand);
            sl = std::move(cand_sl);
            f_hat = cand_f;
            phi = cand_phi;
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) break;  // step unresolvable at this scale; move on
    }
    if (budget_exhausted || final_stage) break;
    kappa /= settings.barrier_reduction;
  }

  // --- diagnostics at the terminating barrier iterate ---------------------
  assemble(pb, lay, pt, sl, kappa, scale, sys);
  const double sigma = scale / kappa;  // multiplier scale, original units
  const VectorXd grad_f_orig = scale * sys.g_obj;
  const VectorXd resid = grad_f_orig + sigma * (sys.g - kappa * sys.g_obj);
  const double stat_resid =
      resid.cwiseAbs().maxCoeff() /
      std::max(1.0, grad_f_orig.cwiseAbs().maxCoeff());

  CovarianceSchedule out;
  out.diag.iterations = newton_steps;
  out.diag.converged = !budget_exhausted;
  out.diag.status = budget_exhausted ? "MaxIterations" : "Converged";
  out.diag.stationarity_residual = stat_resid;
  out.diag.complementarity_gap = sigma * nu;
  out.diag.barrier_weight = sigma;
  out.barrier_P = pt.P;
  out.barrier_Pi = pt.Pi;

  // --- post-processing: snap active bounds, saturate Pi -------------------
  std::vector<MatrixXd> P = pt.P;
  {
    const MatrixXd slack0 = pb.P_init - P[0];
    if (linalg::max_eigenvalue(slack0) <=
        kSnapTol * (1.0 + linalg::max_eigenvalue(pb.P_init))) {
      P[0] = pb.P_init;
    }
    for (int t = 0; t + 1 < T; ++t) {
      const MatrixXd bound =
          symmetrize(pb.A[t] * P[t] * pb.A[t].transpose() + pb.W[t]);
      const MatrixXd slack = bound - P[t + 1];
      if (linalg::max_eigenvalue(slack) <=
          kSnapTol * (1.0 + linalg::max_eigenvalue(bound))) {
        P[t + 1] = bound;
      }
    }
  }

  out.P_post = P;
  out.Pi.resize(T);
  for (int t = 0; t + 1 < T; ++t) {
    out.Pi[t] = saturated_pi(P[t], pb.A[t], pb.W[t]);
  }
  out.Pi[T - 1] = P[T - 1];
  out.P_prior.resize(T);
  out.P_prior[0] = pb.P_init;
  for (int t = 1; t < T; ++t) {
    out.P_prior[t] = symmetrize(pb.A[t - 1] * P[t - 1] *
                                    pb.A[t - 1].transpose() +
                                pb.W[t - 1]);
  }

  double obj = 0.0;
  double cont = pb.control_cost_base;
  for (int t = 0; t < T; ++t) {
    const double tr = 0.5 * (pb.Theta[t] * P[t]).trace();
    obj += tr;
    cont += tr;
  }
  for (int t = 0; t < T; ++t) {
    obj -= 0.5 * pb.gamma[t] * linalg::log_det_pd(out.Pi[t]);
  }
  out.objective_value = obj + pb.constant_C;
  out.control_cost_predicted = cont;
  out.info_cost = 0.0;
  for (int t = 0; t < T; ++t) {
    out.info_cost += 0.5 * pb.gamma[t] *
                     (linalg::log_det_pd(out.P_prior[t]) -
                      linalg::log_det_pd(out.P_post[t]));
  }

  // Feasibility of the reported schedule.
  double feas = std::numeric_limits<double>::infinity();
  const int n_last = pb.state_dim(T - 1);
  feas = std::min(feas, linalg::min_eigenvalue(pb.P_init - P[0]));
  feas = std::min(feas,
                  linalg::min_eigenvalue(
                      P[T - 1] - pb.epsilon *
                                     MatrixXd::Identity(n_last, n_last)));
  for (int t = 0; t + 1 < T; ++t) {
    const int n_t = pb.state_dim(t);
    feas = std::min(feas, linalg::min_eigenvalue(sensing_lmi(
                              P[t], out.Pi[t], pb.A[t], pb.W[t])));
    feas = std::min(feas, linalg::min_eigenvalue(out.P_prior[t + 1] -
                                                 P[t + 1]));
    feas = std::min(
        feas, linalg::min_eigenvalue(
                  out.Pi[t] - pb.epsilon * MatrixXd::Identity(n_t, n_t)));
  }
  out.diag.feasibility_residual = feas;
  out.diag.optimality_residual =
      (scale * nu / kappa) / std::max(1.0, std::abs(out.objective_value));
  return out;
}

KktReport kkt_report(const MaxDetProblem& pb,
                     const CovarianceSchedule& schedule) {
  const int T = pb.T;
  if (static_cast<int>(schedule.P_post.size()) != T) {
    throw std::invalid_argument("kkt_report: schedule length mismatch");
  }
  const Layout lay = make_layout(pb);

  KktReport rep;
  // Feasibility is always evaluated on the schedule as reported.
  {
    double feas = std::numeric_limits<double>::infinity();
    const int n_last = pb.state_dim(T - 1);
    feas = std::min(feas,
                    linalg::min_eigenvalue(pb.P_init - schedule.P_post[0]));
    feas = std::min(
        feas, linalg::min_eigenvalue(schedule.P_post[T - 1] -
                                     pb.epsilon * MatrixXd::Identity(
                                                      n_last, n_last)));
    for (int t = 0; t + 1 < T; ++t) {
      const int n_t = pb.state_dim(t);
      feas = std::min(feas, linalg::min_eigenvalue(
                                sensing_lmi(schedule.P_post[t], schedule.Pi[t],
                                            pb.A[t], pb.W[t])));
      feas = std::min(
          feas, linalg::min_eigenvalue(
                    symmetrize(pb.A[t] * schedule.P_post[t] *
                                   pb.A[t].transpose() +
                               pb.W[t]) -
                    schedule.P_post[t + 1]));
      feas = std::min(feas, linalg::min_eigenvalue(
                                schedule.Pi[t] -
                                pb.epsilon * MatrixXd::Identity(n_t, n_t)));
    }
    rep.feasibility_residual = feas;
  }

  // Stationarity: evaluate at the barrier iterate when available (the
  // reported schedule saturates some constraint faces, where barrier
  // multipliers are undefined); otherwise fit a single multiplier scale.
  Point pt;
  double sigma = -1.0;
  if (!schedule.barrier_P.empty() && schedule.diag.barrier_weight > 0.0) {
    pt.P = schedule.barrier_P;
    pt.Pi = schedule.barrier_Pi;
    sigma = schedule.diag.barrier_weight;
  } else {
    pt.P = schedule.P_post;
    pt.Pi.assign(schedule.Pi.begin(),
                 schedule.Pi.begin() + std::max(0, T - 1));
  }
  Slacks sl = compute_slacks(pb, pt);
  if (!sl.ok) {
    // Not strictly feasible; stationarity is meaningless here.
    rep.stationarity_residual = std::numeric_limits<double>::infinity();
    rep.complementarity_gap = std::numeric_limits<double>::infinity();
    return rep;
  }
  NewtonSystem sys;
  assemble(pb, lay, pt, sl, 1.0, 1.0, sys);  // original units
  const VectorXd grad_f = sys.g_obj;
  const VectorXd grad_phi = sys.g - grad_f;
  if (sigma < 0.0) {
    const double denom = grad_phi.squaredNorm();
    sigma = denom > 0.0 ? std::max(0.0, -grad_f.dot(grad_phi) / denom) : 0.0;
  }
  const VectorXd resid = grad_f + sigma * grad_phi;
  rep.stationarity_residual =
      resid.cwiseAbs().maxCoeff() /
      std::max(1.0, grad_f.cwiseAbs().maxCoeff());
  rep.complementarity_gap = sigma * barrier_nu(pb);
  return rep;
}

}  // namespace infolqg
