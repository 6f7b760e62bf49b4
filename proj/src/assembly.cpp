#include "advdiff/assembly.hpp"

#include <cmath>
#include <optional>

#include "advdiff/quadrature.hpp"
#include "advdiff/stencils.hpp"

namespace advdiff {

namespace {

void check_mesh(const Problem& problem, const Mesh1D& mesh) {
  const double span = problem.x_hi() - problem.x_lo();
  if (std::abs(mesh.x_lo() - problem.x_lo()) > 1e-12 * span ||
      std::abs(mesh.x_hi() - problem.x_hi()) > 1e-12 * span) {
    throw Error(ErrorCode::MeshProblemMismatch,
                "mesh endpoints differ from the problem domain");
  }
}

TriDiagSystem zero_system(Eigen::Index n_nodes, Formulation formulation) {
  TriDiagSystem sys;
  sys.sub = Eigen::VectorXd::Zero(n_nodes - 1);
  sys.diag = Eigen::VectorXd::Zero(n_nodes);
  sys.sup = Eigen::VectorXd::Zero(n_nodes - 1);
  sys.rhs = Eigen::VectorXd::Zero(n_nodes);
  sys.formulation = formulation;
  return sys;
}

// Element integrals for the advective formulations:
//   adv_i = \int v N_i dx, stiff = \int keff N_i' N_j' dx pattern factor,
//   load_i = \int f N_i dx.
struct AdvectiveElement {
  double adv0, adv1;  // \int v N_0, \int v N_1
  double stiff;       // \int keff / h^2
  double load0, load1;
};

AdvectiveElement advective_element(const Problem& problem, double xl, double h,
                                   bool artificial) {
  AdvectiveElement el{};
  const double extra =
      artificial ? kbar(problem.velocity()(xl + 0.5 * h),
                        problem.diffusivity()(xl + 0.5 * h), h)
                 : 0.0;
  if (problem.constant_coefficients()) {
    const double v = problem.velocity().constant_value();
    const double k = problem.diffusivity().constant_value() + extra;
    const double f = problem.forcing().constant_value();
    el.adv0 = el.adv1 = v * h / 2.0;
    el.stiff = k / h;
    el.load0 = el.load1 = f * h / 2.0;
    return el;
  }
  const int n_pts = gauss_points_for_peclet(peclet_element(problem, xl, h));
  const GaussRule& rule = gauss_rule(n_pts);
  for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
    const double t = 0.5 * h * (rule.points(q) + 1.0);
    const double x = xl + t;
    const double jw = 0.5 * h * rule.weights(q);
    const double n0 = 1.0 - t / h;
    const double n1 = t / h;
    el.adv0 += jw * problem.velocity()(x) * n0;
    el.adv1 += jw * problem.velocity()(x) * n1;
    el.stiff += jw * (problem.diffusivity()(x) + extra) / (h * h);
    el.load0 += jw * problem.forcing()(x) * n0;
    el.load1 += jw * problem.forcing()(x) * n1;
  }
  return el;
}

// Weighted element integrals with alpha normalized to the element's left
// node, i.e. using exp(rate * t) in the local coordinate t = x - xl:
//   stiff = \int ahat k / h^2, load_i = \int ahat f N_i, mass_i = \int ahat N_i.
struct WeightedElement {
  double stiff;
  double load0, load1;
  double mass0, mass1;
};

WeightedElement weighted_element(const Problem& problem,
                                 const WeightFunction& weight, Eigen::Index e,
                                 double xl, double h) {
  WeightedElement el{};
  const double rate = weight.element_rate(e);
  if (problem.constant_coefficients()) {
    const double k = problem.diffusivity().constant_value();
    const double f = problem.forcing().constant_value();
    const double hat0[] = {1.0, -1.0 / h};
    const double hat1[] = {0.0, 1.0 / h};
    const double one[] = {1.0};
    el.mass0 = integrate_exp_poly(rate, hat0, 0.0, h);
    el.mass1 = integrate_exp_poly(rate, hat1, 0.0, h);
    el.stiff = k / (h * h) * integrate_exp_poly(rate, one, 0.0, h);
    el.load0 = f * el.mass0;
    el.load1 = f * el.mass1;
    return el;
  }
  const int n_pts = gauss_points_for_peclet(peclet_element(problem, xl, h));
  const GaussRule& rule = gauss_rule(n_pts);
  const double log_left = weight.node_log_alpha(e);
  for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
    const double t = 0.5 * h * (rule.points(q) + 1.0);
    const double x = xl + t;
    const double jw = 0.5 * h * rule.weights(q);
    // weight.log_alpha interpolates the same piecewise-linear data, so this
    // matches alpha(x) up to the left-node normalization.
    const double ahat = std::exp(weight.log_alpha(x) - log_left);
    const double n0 = 1.0 - t / h;
    const double n1 = t / h;
    el.stiff += jw * ahat * problem.diffusivity()(x) / (h * h);
    el.load0 += jw * ahat * problem.forcing()(x) * n0;
    el.load1 += jw * ahat * problem.forcing()(x) * n1;
    el.mass0 += jw * ahat * n0;
    el.mass1 += jw * ahat * n1;
  }
  return el;
}

bool zero_velocity(const Problem& problem) {
  return problem.velocity().is_constant() &&
         problem.velocity().constant_value() == 0.0;
}

}  // namespace

TriDiagSystem assemble(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation) {
  if (formulation == Formulation::WeightedVariational) {
    return assemble(problem, mesh, formulation,
                    WeightFunction::build(problem, mesh));
  }
  check_mesh(problem, mesh);
  TriDiagSystem sys = zero_system(mesh.n_nodes(), formulation);
  const bool artificial = formulation == Formulation::ArtificialDiffusion;
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    const AdvectiveElement el = advective_element(problem, xl, h, artificial);
    // Advection couples N_i to N_j' = -/+ 1/h; diffusion is the usual
    // [[1,-1],[-1,1]] pattern.
    sys.diag(e) += -el.adv0 / h + el.stiff;
    sys.sup(e) += el.adv0 / h - el.stiff;
    sys.sub(e) += -el.adv1 / h - el.stiff;
    sys.diag(e + 1) += el.adv1 / h + el.stiff;
    sys.rhs(e) += el.load0;
    sys.rhs(e + 1) += el.load1;
  }
  sys.symmetric_hint =
      formulation == Formulation::Galerkin && zero_velocity(problem);
  return sys;
}

TriDiagSystem assemble(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation, const WeightFunction& weight) {
  if (formulation != Formulation::WeightedVariational) {
    return assemble(problem, mesh, formulation);
  }
  check_mesh(problem, mesh);
  TriDiagSystem sys = zero_system(mesh.n_nodes(), formulation);
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    const WeightedElement el = weighted_element(problem, weight, e, xl, h);
    const double alpha_left =
        std::exp(weight.node_log_alpha(e)) * weight.normalization();
    const double s = alpha_left * el.stiff;
    sys.diag(e) += s;
    sys.sup(e) -= s;
    sys.sub(e) -= s;
    sys.diag(e + 1) += s;
    sys.rhs(e) += alpha_left * el.load0;
    sys.rhs(e + 1) += alpha_left * el.load1;
  }
  sys.symmetric_hint = true;
  return sys;
}

Eigen::VectorXd weighted_lumped_mass(const Problem& problem, const Mesh1D& mesh,
                                     const WeightFunction& weight) {
  check_mesh(problem, mesh);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.n_nodes());
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    const WeightedElement el = weighted_element(problem, weight, e, xl, h);
    const double alpha_left =
        std::exp(weight.node_log_alpha(e)) * weight.normalization();
    m(e) += alpha_left * el.mass0;
    m(e + 1) += alpha_left * el.mass1;
  }
  return m;
}

Eigen::VectorXd lumped_mass(const Mesh1D& mesh) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.n_nodes());
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    (void)xl;
    m(e) += h / 2.0;
    m(e + 1) += h / 2.0;
  }
  return m;
}

TriDiagSystem row_equilibrate(TriDiagSystem sys,
                              const Eigen::VectorXd& scales) {
  if (scales.size() != sys.size()) {
    throw Error(ErrorCode::InvalidArgument, "one scale per row required");
  }
  if (!(scales.minCoeff() > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale, "row scales must be positive");
  }
  const Eigen::Index n = sys.size();
  bool all_equal = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (scales(i) != scales(0)) all_equal = false;
    sys.diag(i) /= scales(i);
    sys.rhs(i) /= scales(i);
    if (i < n - 1) sys.sup(i) /= scales(i);
    if (i > 0) sys.sub(i - 1) /= scales(i);
  }
  sys.symmetric_hint = sys.symmetric_hint && all_equal;
  return sys;
}

TriDiagSystem symmetric_scale(TriDiagSystem sys,
                              const Eigen::VectorXd& masses) {
  if (masses.size() != sys.size()) {
    throw Error(ErrorCode::InvalidArgument, "one mass per row required");
  }
  if (!(masses.minCoeff() > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale, "masses must be positive");
  }
  const Eigen::VectorXd s = masses.cwiseSqrt();
  const Eigen::Index n = sys.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.diag(i) /= masses(i);
    sys.rhs(i) /= s(i);
    if (i < n - 1) sys.sup(i) /= s(i) * s(i + 1);
    if (i > 0) sys.sub(i - 1) /= s(i) * s(i - 1);
  }
  return sys;
}

TriDiagSystem apply_dirichlet(TriDiagSystem sys, Eigen::Index node,
                              double value) {
  const Eigen::Index n = sys.size();
  if (node != 0 && node != n - 1) {
    throw Error(ErrorCode::InteriorDirichletUnsupported,
                "Dirichlet values are supported at boundary nodes only");
  }
  if (node == 0) {
    sys.rhs(1) -= sys.sub(0) * value;
    sys.sub(0) = 0.0;
    sys.sup(0) = 0.0;
    sys.diag(0) = 1.0;
    sys.rhs(0) = value;
  } else {
    sys.rhs(n - 2) -= sys.sup(n - 2) * value;
    sys.sup(n - 2) = 0.0;
    sys.sub(n - 2) = 0.0;
    sys.diag(n - 1) = 1.0;
    sys.rhs(n - 1) = value;
  }
  return sys;
}

TriDiagSystem apply_neumann(TriDiagSystem sys, const Problem& problem, End end,
                            double t_p, const WeightFunction* weight) {
  const BoundaryCondition& bc =
      end == End::Left ? problem.bc_left() : problem.bc_right();
  if (bc.kind != BcKind::Neumann) {
    throw Error(ErrorCode::EndHasDirichlet,
                "that end carries a Dirichlet condition");
  }
  const Eigen::Index node = end == End::Left ? 0 : sys.size() - 1;
  if (sys.formulation == Formulation::WeightedVariational) {
    if (weight == nullptr) {
      throw Error(ErrorCode::InvalidArgument,
                  "the weighted Neumann term needs the weight function");
    }
    const double x_end = end == End::Left ? problem.x_lo() : problem.x_hi();
    sys.rhs(node) += weight->alpha(x_end) * t_p;
  } else {
    sys.rhs(node) += t_p;
  }
  return sys;
}

TriDiagSystem build_system(const Problem& problem, const Mesh1D& mesh,
                           Formulation formulation,
                           const WeightFunction* weight) {
  std::optional<WeightFunction> local;
  const WeightFunction* w = weight;
  if (formulation == Formulation::WeightedVariational && w == nullptr) {
    local.emplace(WeightFunction::build(problem, mesh));
    w = &*local;
  }
  TriDiagSystem sys = formulation == Formulation::WeightedVariational
                          ? assemble(problem, mesh, formulation, *w)
                          : assemble(problem, mesh, formulation);
  if (problem.bc_left().kind == BcKind::Neumann) {
    sys = apply_neumann(std::move(sys), problem, End::Left,
                        problem.bc_left().value, w);
  }
  if (problem.bc_right().kind == BcKind::Neumann) {
    sys = apply_neumann(std::move(sys), problem, End::Right,
                        problem.bc_right().value, w);
  }
  if (problem.bc_left().kind == BcKind::Dirichlet) {
    sys = apply_dirichlet(std::move(sys), 0, problem.bc_left().value);
  }
  if (problem.bc_right().kind == BcKind::Dirichlet) {
    sys = apply_dirichlet(std::move(sys), sys.size() - 1,
                          problem.bc_right().value);
  }
  return sys;
}

TriDiagSystem build_weighted_difference_system(const Problem& problem,
                                               const Mesh1D& mesh,
                                               const WeightFunction& weight) {
  check_mesh(problem, mesh);
  TriDiagSystem sys =
      zero_system(mesh.n_nodes(), Formulation::WeightedVariational);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(mesh.n_nodes());
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    const WeightedElement el = weighted_element(problem, weight, e, xl, h);
    // Row e is normalized by alpha at node e: the element's own left node,
    // factor 1. Row e+1 is normalized by alpha at node e+1, a factor
    // exp(log_alpha(e) - log_alpha(e+1)) relative to the local integrals;
    // this stays bounded by exp(2 Pe_element) regardless of position.
    const double carry =
        std::exp(weight.node_log_alpha(e) - weight.node_log_alpha(e + 1));
    sys.diag(e) += el.stiff;
    sys.sup(e) -= el.stiff;
    sys.sub(e) -= carry * el.stiff;
    sys.diag(e + 1) += carry * el.stiff;
    sys.rhs(e) += el.load0;
    sys.rhs(e + 1) += carry * el.load1;
    mass(e) += el.mass0;
    mass(e + 1) += carry * el.mass1;
  }
  // Neumann flux in row-normalized units: alpha(x_end) cancels exactly.
  if (problem.bc_left().kind == BcKind::Neumann) {
    sys.rhs(0) += problem.bc_left().value;
  }
  if (problem.bc_right().kind == BcKind::Neumann) {
    sys.rhs(sys.size() - 1) += problem.bc_right().value;
  }
  sys = row_equilibrate(std::move(sys), mass);
  if (problem.bc_left().kind == BcKind::Dirichlet) {
    sys = apply_dirichlet(std::move(sys), 0, problem.bc_left().value);
  }
  if (problem.bc_right().kind == BcKind::Dirichlet) {
    sys = apply_dirichlet(std::move(sys), sys.size() - 1,
                          problem.bc_right().value);
  }
  return sys;
}

}  // namespace advdiff
