#pragma once

#include <Eigen/Core>
#include <functional>

#include "advdiff/errors.hpp"
#include "advdiff/mesh.hpp"

namespace advdiff {

// Scalar coefficient field: a constant or a function of position. The
// constant/varying distinction is recorded at construction; a callable that
// happens to be constant counts as varying.
class Coefficient {
 public:
  Coefficient(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Coefficient(std::function<double(double)> fn)
      : fn_(std::move(fn)), constant_(false) {}

  double operator()(double x) const { return constant_ ? value_ : fn_(x); }
  bool is_constant() const { return constant_; }
  double constant_value() const {
    if (!constant_) {
      throw Error(ErrorCode::NotConstantCoefficient,
                  "coefficient varies with position");
    }
    return value_;
  }

 private:
  std::function<double(double)> fn_;
  double value_ = 0.0;
  bool constant_ = true;
};

enum class BcKind { Dirichlet, Neumann };

struct BoundaryCondition {
  BcKind kind = BcKind::Dirichlet;
  double value = 0.0;  // concentration (Dirichlet) or diffusive flux (Neumann)

  static BoundaryCondition dirichlet(double value) {
    return {BcKind::Dirichlet, value};
  }
  static BoundaryCondition neumann(double flux) {
    return {BcKind::Neumann, flux};
  }
};

// Unvalidated problem data: velocity, diffusivity, forcing on [x_lo, x_hi].
struct ProblemSpec {
  Coefficient v = 0.0;
  Coefficient k = 1.0;
  Coefficient f = 0.0;
  double x_lo = 0.0;
  double x_hi = 1.0;
};

// Validated problem; immutable, safe to share across concurrent solves.
class Problem {
 public:
  const Coefficient& velocity() const { return v_; }
  const Coefficient& diffusivity() const { return k_; }
  const Coefficient& forcing() const { return f_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  const BoundaryCondition& bc_left() const { return bc_left_; }
  const BoundaryCondition& bc_right() const { return bc_right_; }
  bool constant_coefficients() const { return constant_; }

  friend Problem validate(const ProblemSpec&, const BoundaryCondition&,
                          const BoundaryCondition&);

 private:
  Problem(ProblemSpec spec, BoundaryCondition left, BoundaryCondition right);

  Coefficient v_, k_, f_;
  double x_lo_, x_hi_;
  BoundaryCondition bc_left_, bc_right_;
  bool constant_;
};

// Checks the problem invariants: x_lo < x_hi, k > 0 on a grid of 101 sample
// points, and at least one Dirichlet end.
Problem validate(const ProblemSpec& spec, const BoundaryCondition& left,
                 const BoundaryCondition& right);

// Element Peclet number v*h/(2k) evaluated at the element midpoint.
double peclet_element(const Problem& problem, double x_left, double h);

// The positive weight alpha(x) = exp(log_alpha(x)) * normalization with
// log_alpha the negative cumulative integral of v/k from x_lo, shifted so its
// maximum over the domain is zero. Constant-coefficient problems use the
// closed form -v*(x - x_lo)/k; varying coefficients accumulate a 5-point
// Gauss integral per element, cached at element endpoints and interpolated
// linearly (in the log) inside an element.
class WeightFunction {
 public:
  static WeightFunction build(const Problem& problem, const Mesh1D& mesh);

  double log_alpha(double x) const;
  double alpha(double x) const;
  double normalization() const { return normalization_; }
  void set_normalization(double scale);

  // Piecewise data used by assembly: log_alpha is linear on each element.
  double node_log_alpha(Eigen::Index node) const { return node_log_alpha_(node); }
  double element_rate(Eigen::Index e) const { return rate_(e); }
  const Mesh1D& mesh() const { return mesh_; }

 private:
  WeightFunction() = default;

  Mesh1D mesh_;
  Eigen::VectorXd node_log_alpha_;  // shifted so max = 0
  Eigen::VectorXd rate_;            // d(log alpha)/dx per element
  double normalization_ = 1.0;
};

double alpha_at(const WeightFunction& w, double x);

}  // namespace advdiff
