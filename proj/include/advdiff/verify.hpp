#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "advdiff/formulation.hpp"
#include "advdiff/mesh.hpp"
#include "advdiff/problem.hpp"
#include "advdiff/solve.hpp"

namespace advdiff {

struct ExactnessEntry {
  double ratio = 0.0;  // v/k
  Formulation formulation = Formulation::Galerkin;
  double max_nodal_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExactnessReport {
  std::vector<ExactnessEntry> entries;
};

struct SymmetryReport {
  double asymmetry = 0.0;          // max|sub - sup| / max row magnitude
  double max_abs_asymmetry = 0.0;  // max|sub - sup|
  Formulation formulation = Formulation::Galerkin;
  std::string problem_summary;
};

struct ConvergenceReport {
  std::vector<double> mesh_sizes;  // h
  std::vector<double> l2_errors;
  std::vector<double> rates;  // log2 ratios of successive errors
};

// max_j |u_j - u(x_j)| against the constant-coefficient exact solution.
// Requires the unit-interval homogeneous-Dirichlet model problem.
double nodal_exactness(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation);

// Fraction of adjacent interior node pairs where the nodal error changes
// sign; the oscillation metric.
double oscillation_fraction(const Problem& problem, const Mesh1D& mesh,
                            Formulation formulation);

// One solve per ratio (v = 1, k = 1/ratio, f = 1) on a uniform mesh of
// n_elements, with pass flags at the given tolerance.
ExactnessReport exactness_sweep(const std::vector<double>& ratios,
                                Eigen::Index n_elements,
                                Formulation formulation, double tolerance);

// Asymmetry of the assembled (pre-equilibration, pre-BC) matrix; for
// discrete bilinear forms the potential-existence criterion reduces to
// matrix symmetry.
SymmetryReport vainberg_symmetry(const Problem& problem, const Mesh1D& mesh,
                                 Formulation formulation);

// The scalar functional whose stationary points solve the weighted form:
// \int alpha (k/2 (u')^2 - u f) dx minus the weighted Neumann boundary term,
// for the piecewise-linear reconstruction of the nodal values.
double functional_value(const Problem& problem, const Mesh1D& mesh,
                        const Eigen::VectorXd& values);

// Max |dI/d eps| over interior hat directions by central differences with
// eps = 1e-6 * ||u||_inf (floor 1e-9).
double stationarity_check(const Problem& problem, const Mesh1D& mesh,
                          const NodalSolution& solution);

// L2 errors against the exact solution via 8-point Gauss per element, over
// strictly increasing element counts; rates are log2(e_i / e_{i+1}).
ConvergenceReport convergence_study(const Problem& problem,
                                    Formulation formulation,
                                    const std::vector<Eigen::Index>& sizes);

// Solves (v, f) and (-v, f) with mirrored Dirichlet data on the same uniform
// mesh; returns max |u_j(v) - u_{n-j}(-v)|.
double mirror_check(const Problem& problem, const Mesh1D& mesh,
                    Formulation formulation);

// Exact solution for v u' - k u'' = f on (0,1), u(0) = 0, k u'(1) = t_p;
// reference for the reported (not asserted) Neumann-outflow measurements.
double exact_solution_neumann_outflow(double v, double k, double f, double t_p,
                                      double x);

// L2 norm of u_h - u_exact for the model problem, 8-point Gauss per element.
double l2_error(const Problem& problem, const Mesh1D& mesh,
                const Eigen::VectorXd& values);

}  // namespace advdiff
