#pragma once

#include <cmath>
#include <random>

#include "advdiff/problem.hpp"

namespace advdiff::testing {

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * (scale > 0.0 ? scale : 1.0);
}

// Model problem v u' - k u'' = f on (0,1), u(0) = u(1) = 0.
inline Problem model_problem(double v, double k, double f = 1.0) {
  return validate({v, k, f, 0.0, 1.0}, BoundaryCondition::dirichlet(0.0),
                  BoundaryCondition::dirichlet(0.0));
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return lo * std::pow(hi / lo, unit(rng));
}

// Runs fn, expecting it to throw Error; returns the code it carried.
template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an advdiff::Error");
}

}  // namespace advdiff::testing
