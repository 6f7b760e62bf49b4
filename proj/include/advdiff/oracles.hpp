#pragma once

#include <Eigen/Core>
#include <span>

#include "advdiff/assembly.hpp"

namespace advdiff {
namespace oracles {

// Reference implementations used only to cross-check the fast paths; each
// one takes a route independent of the code it validates.

// Dense full-pivot LU solve of the tridiagonal system.
Eigen::VectorXd dense_solve(const TriDiagSystem& sys);

// coth(x) - 1/x evaluated in 50-digit arithmetic, rounded to double.
double cothm_reference(double x);

// \int_{x0}^{x1} poly(x) exp(a x) dx by the antiderivative recurrence in
// 50-digit arithmetic.
double exp_poly_integral_reference(double a, std::span<const double> poly,
                                   double x0, double x1);

// The model-problem solution (f/v)(x - (1 - e^{vx/k})/(1 - e^{v/k}))
// evaluated naively in 50-digit arithmetic, where overflow and cancellation
// are harmless.
double exact_solution_reference(double v, double k, double f, double x);

}  // namespace oracles
}  // namespace advdiff
