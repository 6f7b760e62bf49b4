#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "advdiff/errors.hpp"
#include "advdiff/problem.hpp"

namespace advdiff {

// Gauss-Legendre abscissae/weights on [-1, 1].
struct GaussRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
};

// Rule with n in [1, 64]; built once and cached, safe to share.
const GaussRule& gauss_rule(int n);

// Exact value of \int_{x0}^{x1} poly(x) exp(a x) dx for poly given as
// ascending coefficients. Internally works in the shifted variable
// t = x - x0 so exponent magnitudes stay at |a*(x1-x0)|; for
// |a*(x1-x0)| < 1e-4 a degree-8 series replaces the recurrence, which is
// cancellative there.
double integrate_exp_poly(double a, std::span<const double> poly, double x0,
                          double x1);

// \int_{x0}^{x1} poly(x) exp(rate x) dx as a value type.
struct ExpPolyIntegral {
  double rate = 0.0;
  std::vector<double> poly;  // ascending coefficients
  double x0 = 0.0;
  double x1 = 0.0;

  double value() const { return integrate_exp_poly(rate, poly, x0, x1); }
};

// Gauss approximation of \int_{x0}^{x1} alpha(x) g(x) dx with n_pts points.
double integrate_weighted(const std::function<double(double)>& g,
                          const WeightFunction& w, double x0, double x1,
                          int n_pts);

// Points used for varying-coefficient elements: clamp(4 + ceil|Pe|, 4, 32).
int gauss_points_for_peclet(double peclet);

namespace detail {
// The two branches of integrate_exp_poly, exposed so tests can compare them
// across the switch threshold.
double integrate_exp_poly_series(double a, std::span<const double> poly,
                                 double x0, double x1);
double integrate_exp_poly_recurrence(double a, std::span<const double> poly,
                                     double x0, double x1);
}  // namespace detail

}  // namespace advdiff
