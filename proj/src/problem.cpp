#include "advdiff/problem.hpp"

#include <cmath>

#include "advdiff/quadrature.hpp"

namespace advdiff {

Problem::Problem(ProblemSpec spec, BoundaryCondition left,
                 BoundaryCondition right)
    : v_(std::move(spec.v)),
      k_(std::move(spec.k)),
      f_(std::move(spec.f)),
      x_lo_(spec.x_lo),
      x_hi_(spec.x_hi),
      bc_left_(left),
      bc_right_(right),
      constant_(v_.is_constant() && k_.is_constant() && f_.is_constant()) {}

Problem validate(const ProblemSpec& spec, const BoundaryCondition& left,
                 const BoundaryCondition& right) {
  if (!(spec.x_lo < spec.x_hi)) {
    throw Error(ErrorCode::EmptyDomain, "x_lo must be less than x_hi");
  }
  if (left.kind != BcKind::Dirichlet && right.kind != BcKind::Dirichlet) {
    throw Error(ErrorCode::NoDirichletEnd,
                "at least one end must carry a Dirichlet condition");
  }
  constexpr int kValidationPoints = 101;
  for (int i = 0; i < kValidationPoints; ++i) {
    const double x = spec.x_lo + (spec.x_hi - spec.x_lo) * i /
                                     static_cast<double>(kValidationPoints - 1);
    const double k = spec.k(x);
    if (!(k > 0.0)) {
      throw Error(ErrorCode::NonPositiveDiffusivity,
                  "k(" + std::to_string(x) + ") = " + std::to_string(k));
    }
  }
  return Problem(spec, left, right);
}

double peclet_element(const Problem& problem, double x_left, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "element width must be positive");
  }
  const double x_mid = x_left + 0.5 * h;
  return problem.velocity()(x_mid) * h / (2.0 * problem.diffusivity()(x_mid));
}

WeightFunction WeightFunction::build(const Problem& problem,
                                     const Mesh1D& mesh) {
  const double span = mesh.x_hi() - mesh.x_lo();
  if (std::abs(mesh.x_lo() - problem.x_lo()) > 1e-12 * span ||
      std::abs(mesh.x_hi() - problem.x_hi()) > 1e-12 * span) {
    throw Error(ErrorCode::MeshProblemMismatch,
                "mesh endpoints differ from the problem domain");
  }

  WeightFunction w;
  w.mesh_ = mesh;
  const Eigen::Index n = mesh.n_elements();
  w.node_log_alpha_.resize(n + 1);
  w.rate_.resize(n);

  if (problem.constant_coefficients()) {
    const double rate =
        -problem.velocity().constant_value() / problem.diffusivity().constant_value();
    w.rate_.setConstant(rate);
    for (Eigen::Index j = 0; j <= n; ++j) {
      w.node_log_alpha_(j) = rate * (mesh.nodes()(j) - mesh.x_lo());
    }
  } else {
    const GaussRule& rule = gauss_rule(5);
    w.node_log_alpha_(0) = 0.0;
    for (Eigen::Index e = 0; e < n; ++e) {
      const auto [xl, h] = element_span(mesh, e);
      double drop = 0.0;
      for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
        const double x = xl + 0.5 * h * (rule.points(q) + 1.0);
        drop += 0.5 * h * rule.weights(q) *
                (problem.velocity()(x) / problem.diffusivity()(x));
      }
      w.node_log_alpha_(e + 1) = w.node_log_alpha_(e) - drop;
      w.rate_(e) = -drop / h;
    }
  }

  // Normalize so the (piecewise-linear) maximum of log_alpha is zero.
  const double shift = w.node_log_alpha_.maxCoeff();
  w.node_log_alpha_.array() -= shift;
  return w;
}

double WeightFunction::log_alpha(double x) const {
  const Eigen::Index e = mesh_.element_of(x);
  return node_log_alpha_(e) + rate_(e) * (x - mesh_.nodes()(e));
}

double WeightFunction::alpha(double x) const {
  return std::exp(log_alpha(x)) * normalization_;
}

void WeightFunction::set_normalization(double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "normalization must be positive");
  }
  normalization_ = scale;
}

double alpha_at(const WeightFunction& w, double x) { return w.alpha(x); }

}  // namespace advdiff
