#pragma once

#include <Eigen/Core>
#include <optional>

#include "advdiff/assembly.hpp"
#include "advdiff/mesh.hpp"
#include "advdiff/problem.hpp"

namespace advdiff {

// Nodal values with provenance. Raw tridiagonal solves leave formulation and
// mesh unset; the solve() driver fills them.
struct NodalSolution {
  Eigen::VectorXd values;
  std::optional<Formulation> formulation;
  double residual_inf = 0.0;
  Mesh1D mesh;
};

// max_i |(A u - b)_i|.
double residual_inf(const TriDiagSystem& sys, const Eigen::VectorXd& u);

// Direct solve by forward elimination and back substitution, no pivoting;
// a pivot magnitude <= 1e-300 raises ZeroPivot with the failing row.
NodalSolution thomas_solve(const TriDiagSystem& sys);

// 1-norm condition number kappa_1 = ||A||_1 * ||A^{-1}||_1, the inverse norm
// taken exactly from n tridiagonal solves against unit columns. n <= 100000.
double condition_estimate(const TriDiagSystem& sys);

// Assemble, apply the problem's boundary conditions, and solve. The weighted
// formulation goes through the difference-equation (row-equilibrated) form.
NodalSolution solve(const Problem& problem, const Mesh1D& mesh,
                    Formulation formulation,
                    const WeightFunction* weight = nullptr);

}  // namespace advdiff
