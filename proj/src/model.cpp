#include "infolqg/model.hpp"

#include <sstream>
#include <string>

#include "infolqg/linalg.hpp"

namespace infolqg {
namespace {

constexpr double kAsymmetryTol = 1e-9;

std::string step_name(const char* base, int t) {
  return std::string(base) + "_" + std::to_string(t + 1);
}

void add(std::vector<Violation>& out, std::string field, int step,
         const std::string& message) {
  out.push_back({std::move(field), step, message});
}

void check_symmetric_matrix(const Eigen::MatrixXd& m, const std::string& name,
                            int t, std::vector<Violation>& out) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << name << " must be square, got " << m.rows() << "x" << m.cols();
    add(out, name, t, os.str());
    return;
  }
  const double asym = linalg::relative_asymmetry(m);
  if (asym > kAsymmetryTol) {
    std::ostringstream os;
    os << name << " not symmetric (relative asymmetry " << asym << ")";
    add(out, name, t, os.str());
  }
}

}  // namespace

void canonicalize(ProblemSpec& spec) {
  auto fix = [](Eigen::MatrixXd& m) {
    if (m.rows() == m.cols() && m.rows() > 0 &&
        linalg::relative_asymmetry(m) <= kAsymmetryTol) {
      m = linalg::symmetrize(m);
    }
  };
  for (auto& m : spec.W) fix(m);
  for (auto& m : spec.Q) fix(m);
  for (auto& m : spec.R) fix(m);
  fix(spec.P_init);
}

ValidationResult validate_problem(const ProblemSpec& spec) {
  ValidationResult res;
  auto& v = res.violations;
  const int T = spec.horizon;

  if (T < 1) {
    add(v, "horizon", -1, "horizon must be a positive integer");
    return res;
  }
  auto check_count = [&](const char* name, std::size_t got) {
    if (got != static_cast<std::size_t>(T)) {
      std::ostringstream os;
      os << name << " must have " << T << " per-step entries, got " << got;
      add(v, name, -1, os.str());
    }
  };
  check_count("A", spec.A.size());
  check_count("B", spec.B.size());
  check_count("W", spec.W.size());
  check_count("Q", spec.Q.size());
  check_count("R", spec.R.size());
  check_count("gamma", spec.gamma.size());
  if (!res.ok()) return res;

  if (spec.P_init.rows() == 0 || spec.P_init.rows() != spec.P_init.cols()) {
    add(v, "P_init", -1, "P_init must be a nonempty square matrix");
    return res;
  }

  // Shape consistency: A[t] defines state_dim(t+1); everything else must
  // line up with it.
  for (int t = 0; t < T; ++t) {
    const int n_t = spec.state_dim(t);
    if (spec.A[t].rows() < 1) {
      add(v, step_name("A", t), t,
          step_name("A", t) + " must have at least one row");
      continue;
    }
    if (spec.A[t].cols() != n_t) {
      std::ostringstream os;
      os << step_name("A", t) << " dimension mismatch: expected " << n_t
         << " columns, got " << spec.A[t].cols();
      add(v, step_name("A", t), t, os.str());
    }
    const int n_next = static_cast<int>(spec.A[t].rows());
    if (spec.B[t].rows() != n_next) {
      std::ostringstream os;
      os << step_name("B", t) << " dimension mismatch: expected " << n_next
         << " rows, got " << spec.B[t].rows();
      add(v, step_name("B", t), t, os.str());
    }
    if (spec.B[t].cols() < 1) {
      add(v, step_name("B", t), t,
          step_name("B", t) + " must have at least one column");
    }
    if (spec.W[t].rows() != n_next || spec.W[t].cols() != n_next) {
      std::ostringstream os;
      os << step_name("W", t) << " dimension mismatch: expected " << n_next
         << "x" << n_next;
      add(v, step_name("W", t), t, os.str());
    }
    if (spec.Q[t].rows() != n_next || spec.Q[t].cols() != n_next) {
      std::ostringstream os;
      os << step_name("Q", t) << " dimension mismatch: expected " << n_next
         << "x" << n_next;
      add(v, step_name("Q", t), t, os.str());
    }
    const int m_t = static_cast<int>(spec.B[t].cols());
    if (spec.R[t].rows() != m_t || spec.R[t].cols() != m_t) {
      std::ostringstream os;
      os << step_name("R", t) << " dimension mismatch: expected " << m_t << "x"
         << m_t;
      add(v, step_name("R", t), t, os.str());
    }
  }
  if (!res.ok()) return res;

  check_symmetric_matrix(spec.P_init, "P_init", -1, v);
  for (int t = 0; t < T; ++t) {
    check_symmetric_matrix(spec.W[t], step_name("W", t), t, v);
    check_symmetric_matrix(spec.Q[t], step_name("Q", t), t, v);
    check_symmetric_matrix(spec.R[t], step_name("R", t), t, v);
  }
  if (!res.ok()) return res;

  if (!linalg::is_positive_definite(spec.P_init)) {
    add(v, "P_init", -1, "P_init not positive definite");
  }
  for (int t = 0; t < T; ++t) {
    if (!linalg::is_positive_definite(spec.W[t])) {
      add(v, step_name("W", t), t,
          step_name("W", t) + " not positive definite");
    }
    if (!linalg::is_positive_semidefinite(spec.Q[t])) {
      add(v, step_name("Q", t), t,
          step_name("Q", t) + " not positive semidefinite");
    }
    if (!linalg::is_positive_definite(spec.R[t])) {
      add(v, step_name("R", t), t,
          step_name("R", t) + " not positive definite");
    }
    if (!(spec.gamma[t] > 0.0)) {
      std::ostringstream os;
      os << step_name("gamma", t) << " must be positive, got "
         << spec.gamma[t];
      add(v, step_name("gamma", t), t, os.str());
    }
  }
  return res;
}

}  // namespace infolqg
