#pragma once

#include <Eigen/Core>

#include "advdiff/formulation.hpp"
#include "advdiff/mesh.hpp"
#include "advdiff/problem.hpp"

namespace advdiff {

// Assembled tridiagonal operator and load. sub(i) couples row i+1 to node i,
// sup(i) couples row i to node i+1.
struct TriDiagSystem {
  Eigen::VectorXd sub;   // length n-1
  Eigen::VectorXd diag;  // length n
  Eigen::VectorXd sup;   // length n-1
  Eigen::VectorXd rhs;   // length n
  bool symmetric_hint = false;
  Formulation formulation = Formulation::Galerkin;

  Eigen::Index size() const { return diag.size(); }
};

// Element-loop assembly with linear shape functions; no boundary conditions
// applied. Weighted elements use exact exponential-polynomial integrals for
// constant coefficients and Gauss quadrature otherwise. A WeightFunction is
// built on demand for the weighted formulation when none is supplied.
TriDiagSystem assemble(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation);
TriDiagSystem assemble(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation, const WeightFunction& weight);

// m_j = \int alpha N_j dx over the hat support.
Eigen::VectorXd weighted_lumped_mass(const Problem& problem, const Mesh1D& mesh,
                                     const WeightFunction& weight);

// Plain lumped mass \int N_j dx = (h_left + h_right)/2.
Eigen::VectorXd lumped_mass(const Mesh1D& mesh);

// Divides each row (sub, diag, sup, rhs) by its scale; the solution is
// unchanged. Scales must be positive.
TriDiagSystem row_equilibrate(TriDiagSystem sys, const Eigen::VectorXd& scales);

// Two-sided scaling A <- D^{-1/2} A D^{-1/2} with D = diag(masses), rhs
// scaled by D^{-1/2}; preserves symmetry.
TriDiagSystem symmetric_scale(TriDiagSystem sys, const Eigen::VectorXd& masses);

// Symmetric elimination of a boundary Dirichlet value: the known value moves
// to the adjacent row's rhs, the boundary row becomes the identity.
TriDiagSystem apply_dirichlet(TriDiagSystem sys, Eigen::Index node,
                              double value);

enum class End { Left, Right };

// Adds the Neumann flux t_p to the boundary rhs; the weighted formulation
// scales it by alpha at that end (weight required there).
TriDiagSystem apply_neumann(TriDiagSystem sys, const Problem& problem, End end,
                            double t_p, const WeightFunction* weight = nullptr);

// assemble + the problem's boundary conditions, ready for a direct solve.
TriDiagSystem build_system(const Problem& problem, const Mesh1D& mesh,
                           Formulation formulation,
                           const WeightFunction* weight = nullptr);

// The weighted system assembled directly in difference-equation form: each
// row is pre-divided by its weighted lumped mass, with all exponentials kept
// element-local. Equivalent to row_equilibrate over the plain weighted
// assembly but immune to alpha underflow at large v/k; boundary conditions
// applied. This is the weighted solve path.
TriDiagSystem build_weighted_difference_system(const Problem& problem,
                                               const Mesh1D& mesh,
                                               const WeightFunction& weight);

}  // namespace advdiff
