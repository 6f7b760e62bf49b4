#include "advdiff/solve.hpp"

#include <cmath>

namespace advdiff {

namespace {

struct ThomasFactors {
  Eigen::VectorXd lower;  // multipliers
  Eigen::VectorXd pivot;
};

ThomasFactors factorize(const TriDiagSystem& sys) {
  const Eigen::Index n = sys.size();
  ThomasFactors f;
  f.lower.resize(n > 0 ? n - 1 : 0);
  f.pivot.resize(n);
  double piv = sys.diag(0);
  if (std::abs(piv) <= 1e-300) {
    throw Error(ErrorCode::ZeroPivot, "row 0");
  }
  f.pivot(0) = piv;
  for (Eigen::Index i = 1; i < n; ++i) {
    f.lower(i - 1) = sys.sub(i - 1) / f.pivot(i - 1);
    piv = sys.diag(i) - f.lower(i - 1) * sys.sup(i - 1);
    if (std::abs(piv) <= 1e-300) {
      throw Error(ErrorCode::ZeroPivot, "row " + std::to_string(i));
    }
    f.pivot(i) = piv;
  }
  return f;
}

Eigen::VectorXd substitute(const TriDiagSystem& sys, const ThomasFactors& f,
                           const Eigen::VectorXd& b) {
  const Eigen::Index n = sys.size();
  Eigen::VectorXd y(n);
  y(0) = b(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    y(i) = b(i) - f.lower(i - 1) * y(i - 1);
  }
  Eigen::VectorXd x(n);
  x(n - 1) = y(n - 1) / f.pivot(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    x(i) = (y(i) - sys.sup(i) * x(i + 1)) / f.pivot(i);
  }
  return x;
}

}  // namespace

double residual_inf(const TriDiagSystem& sys, const Eigen::VectorXd& u) {
  const Eigen::Index n = sys.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = sys.diag(i) * u(i) - sys.rhs(i);
    if (i > 0) r += sys.sub(i - 1) * u(i - 1);
    if (i < n - 1) r += sys.sup(i) * u(i + 1);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

NodalSolution thomas_solve(const TriDiagSystem& sys) {
  if (sys.size() < 1) {
    throw Error(ErrorCode::InvalidArgument, "empty system");
  }
  const ThomasFactors f = factorize(sys);
  NodalSolution sol;
  sol.values = substitute(sys, f, sys.rhs);
  sol.residual_inf = residual_inf(sys, sol.values);
  return sol;
}

double condition_estimate(const TriDiagSystem& sys) {
  const Eigen::Index n = sys.size();
  if (n > 100000) {
    throw Error(ErrorCode::InvalidArgument,
                "condition_estimate is limited to n <= 100000");
  }
  double norm_a = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double col = std::abs(sys.diag(j));
    if (j > 0) col += std::abs(sys.sup(j - 1));
    if (j < n - 1) col += std::abs(sys.sub(j));
    norm_a = std::max(norm_a, col);
  }
  const ThomasFactors f = factorize(sys);
  double norm_inv = 0.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    norm_inv = std::max(norm_inv, substitute(sys, f, e).cwiseAbs().sum());
    e(j) = 0.0;
  }
  return norm_a * norm_inv;
}

NodalSolution solve(const Problem& problem, const Mesh1D& mesh,
                    Formulation formulation, const WeightFunction* weight) {
  TriDiagSystem sys;
  std::optional<WeightFunction> local;
  if (formulation == Formulation::WeightedVariational) {
    if (weight == nullptr) {
      local.emplace(WeightFunction::build(problem, mesh));
      weight = &*local;
    }
    sys = build_weighted_difference_system(problem, mesh, *weight);
  } else {
    sys = build_system(problem, mesh, formulation);
  }
  NodalSolution sol = thomas_solve(sys);
  sol.formulation = formulation;
  sol.mesh = mesh;
  return sol;
}

}  // namespace advdiff
