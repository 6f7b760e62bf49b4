#include "advdiff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "advdiff/assembly.hpp"
#include "advdiff/quadrature.hpp"
#include "advdiff/stencils.hpp"

namespace advdiff {

namespace {

void require_model_problem(const Problem& problem) {
  if (!problem.constant_coefficients()) {
    throw Error(ErrorCode::NotConstantCoefficient,
                "the exact-solution reference needs constant coefficients");
  }
  if (problem.x_lo() != 0.0 || problem.x_hi() != 1.0 ||
      problem.bc_left().kind != BcKind::Dirichlet ||
      problem.bc_right().kind != BcKind::Dirichlet ||
      problem.bc_left().value != 0.0 || problem.bc_right().value != 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "the exact-solution reference needs homogeneous Dirichlet "
                "data on (0, 1)");
  }
}

Eigen::VectorXd nodal_errors(const Problem& problem, const Mesh1D& mesh,
                             Formulation formulation) {
  require_model_problem(problem);
  const NodalSolution sol = solve(problem, mesh, formulation);
  const double v = problem.velocity().constant_value();
  const double k = problem.diffusivity().constant_value();
  const double f = problem.forcing().constant_value();
  Eigen::VectorXd err(mesh.n_nodes());
  for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
    err(j) = sol.values(j) - exact_solution(v, k, f, mesh.nodes()(j));
  }
  return err;
}

Problem ratio_problem(double ratio) {
  return validate({1.0, 1.0 / ratio, 1.0, 0.0, 1.0},
                  BoundaryCondition::dirichlet(0.0),
                  BoundaryCondition::dirichlet(0.0));
}

}  // namespace

double nodal_exactness(const Problem& problem, const Mesh1D& mesh,
                       Formulation formulation) {
  return nodal_errors(problem, mesh, formulation).cwiseAbs().maxCoeff();
}

double oscillation_fraction(const Problem& problem, const Mesh1D& mesh,
                            Formulation formulation) {
  const Eigen::VectorXd err = nodal_errors(problem, mesh, formulation);
  const Eigen::Index n = mesh.n_nodes();
  Eigen::Index flips = 0, pairs = 0;
  for (Eigen::Index j = 1; j + 2 < n; ++j) {
    ++pairs;
    if (err(j) * err(j + 1) < 0.0) ++flips;
  }
  return pairs == 0 ? 0.0 : static_cast<double>(flips) / pairs;
}

ExactnessReport exactness_sweep(const std::vector<double>& ratios,
                                Eigen::Index n_elements,
                                Formulation formulation, double tolerance) {
  ExactnessReport report;
  for (double ratio : ratios) {
    const Problem problem = ratio_problem(ratio);
    const Mesh1D mesh = build_uniform(0.0, 1.0, n_elements);
    ExactnessEntry entry;
    entry.ratio = ratio;
    entry.formulation = formulation;
    entry.max_nodal_error = nodal_exactness(problem, mesh, formulation);
    entry.tolerance = tolerance;
    entry.pass = entry.max_nodal_error <= tolerance;
    report.entries.push_back(entry);
  }
  return report;
}

SymmetryReport vainberg_symmetry(const Problem& problem, const Mesh1D& mesh,
                                 Formulation formulation) {
  const TriDiagSystem sys = assemble(problem, mesh, formulation);
  double max_diff = 0.0;
  double max_entry = 0.0;
  for (Eigen::Index i = 0; i < sys.size(); ++i) {
    max_entry = std::max(max_entry, std::abs(sys.diag(i)));
    if (i < sys.size() - 1) {
      max_diff = std::max(max_diff, std::abs(sys.sub(i) - sys.sup(i)));
      max_entry = std::max({max_entry, std::abs(sys.sub(i)),
                            std::abs(sys.sup(i))});
    }
  }
  SymmetryReport report;
  report.max_abs_asymmetry = max_diff;
  report.asymmetry = max_entry > 0.0 ? max_diff / max_entry : 0.0;
  report.formulation = formulation;
  std::ostringstream summary;
  if (problem.constant_coefficients()) {
    summary << "v=" << problem.velocity().constant_value()
            << " k=" << problem.diffusivity().constant_value()
            << " f=" << problem.forcing().constant_value();
  } else {
    summary << "varying coefficients";
  }
  summary << " on [" << problem.x_lo() << ", " << problem.x_hi() << "], n="
          << mesh.n_elements();
  report.problem_summary = summary.str();
  return report;
}

double functional_value(const Problem& problem, const Mesh1D& mesh,
                        const Eigen::VectorXd& values) {
  if (values.size() != mesh.n_nodes()) {
    throw Error(ErrorCode::InvalidArgument, "one value per mesh node");
  }
  const WeightFunction weight = WeightFunction::build(problem, mesh);
  double total = 0.0;
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    const double du = (values(e + 1) - values(e)) / h;
    const double rate = weight.element_rate(e);
    const double alpha_left =
        std::exp(weight.node_log_alpha(e)) * weight.normalization();
    if (problem.constant_coefficients()) {
      const double k = problem.diffusivity().constant_value();
      const double f = problem.forcing().constant_value();
      const double one[] = {1.0};
      const double hat0[] = {1.0, -1.0 / h};
      const double hat1[] = {0.0, 1.0 / h};
      const double ea = integrate_exp_poly(rate, one, 0.0, h);
      const double m0 = integrate_exp_poly(rate, hat0, 0.0, h);
      const double m1 = integrate_exp_poly(rate, hat1, 0.0, h);
      total += alpha_left * (0.5 * k * du * du * ea -
                             f * (values(e) * m0 + values(e + 1) * m1));
    } else {
      const int n_pts = gauss_points_for_peclet(peclet_element(problem, xl, h));
      const GaussRule& rule = gauss_rule(n_pts);
      for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
        const double t = 0.5 * h * (rule.points(q) + 1.0);
        const double x = xl + t;
        const double jw = 0.5 * h * rule.weights(q);
        const double uh = values(e) * (1.0 - t / h) + values(e + 1) * (t / h);
        total += jw * weight.alpha(x) *
                 (0.5 * problem.diffusivity()(x) * du * du -
                  uh * problem.forcing()(x));
      }
    }
  }
  if (problem.bc_left().kind == BcKind::Neumann) {
    total -= weight.alpha(problem.x_lo()) * values(0) * problem.bc_left().value;
  }
  if (problem.bc_right().kind == BcKind::Neumann) {
    total -= weight.alpha(problem.x_hi()) * values(values.size() - 1) *
             problem.bc_right().value;
  }
  return total;
}

double stationarity_check(const Problem& problem, const Mesh1D& mesh,
                          const NodalSolution& solution) {
  const double scale = solution.values.cwiseAbs().maxCoeff();
  const double eps = std::max(1e-6 * scale, 1e-9);
  Eigen::VectorXd u = solution.values;
  double worst = 0.0;
  for (Eigen::Index j = 1; j + 1 < u.size(); ++j) {
    const double saved = u(j);
    u(j) = saved + eps;
    const double plus = functional_value(problem, mesh, u);
    u(j) = saved - eps;
    const double minus = functional_value(problem, mesh, u);
    u(j) = saved;
    worst = std::max(worst, std::abs(plus - minus) / (2.0 * eps));
  }
  return worst;
}

double l2_error(const Problem& problem, const Mesh1D& mesh,
                const Eigen::VectorXd& values) {
  require_model_problem(problem);
  const double v = problem.velocity().constant_value();
  const double k = problem.diffusivity().constant_value();
  const double f = problem.forcing().constant_value();
  const GaussRule& rule = gauss_rule(8);
  double total = 0.0;
  for (Eigen::Index e = 0; e < mesh.n_elements(); ++e) {
    const auto [xl, h] = element_span(mesh, e);
    for (Eigen::Index q = 0; q < rule.points.size(); ++q) {
      const double t = 0.5 * h * (rule.points(q) + 1.0);
      const double x = xl + t;
      const double uh = values(e) * (1.0 - t / h) + values(e + 1) * (t / h);
      const double diff = uh - exact_solution(v, k, f, x);
      total += 0.5 * h * rule.weights(q) * diff * diff;
    }
  }
  return std::sqrt(total);
}

ConvergenceReport convergence_study(const Problem& problem,
                                    Formulation formulation,
                                    const std::vector<Eigen::Index>& sizes) {
  require_model_problem(problem);
  for (size_t i = 0; i + 1 < sizes.size(); ++i) {
    if (sizes[i + 1] <= sizes[i]) {
      throw Error(ErrorCode::InvalidArgument,
                  "element counts must be strictly increasing");
    }
  }
  ConvergenceReport report;
  for (Eigen::Index n : sizes) {
    const Mesh1D mesh = build_uniform(problem.x_lo(), problem.x_hi(), n);
    const NodalSolution sol = solve(problem, mesh, formulation);
    report.mesh_sizes.push_back((problem.x_hi() - problem.x_lo()) /
                                static_cast<double>(n));
    report.l2_errors.push_back(l2_error(problem, mesh, sol.values));
  }
  for (size_t i = 0; i + 1 < report.l2_errors.size(); ++i) {
    const double ratio = report.l2_errors[i] / report.l2_errors[i + 1];
    const double step = report.mesh_sizes[i] / report.mesh_sizes[i + 1];
    report.rates.push_back(std::log(ratio) / std::log(step));
  }
  return report;
}

double mirror_check(const Problem& problem, const Mesh1D& mesh,
                    Formulation formulation) {
  if (!problem.constant_coefficients()) {
    throw Error(ErrorCode::NotConstantCoefficient,
                "mirror check needs constant coefficients");
  }
  if (!mesh.uniform()) {
    throw Error(ErrorCode::InvalidArgument, "mirror check needs a uniform mesh");
  }
  const double v = problem.velocity().constant_value();
  const Problem mirrored =
      validate({-v, problem.diffusivity().constant_value(),
                problem.forcing().constant_value(), problem.x_lo(),
                problem.x_hi()},
               problem.bc_right(), problem.bc_left());
  const NodalSolution a = solve(problem, mesh, formulation);
  const NodalSolution b = solve(mirrored, mesh, formulation);
  const Eigen::Index n = mesh.n_nodes();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(a.values(j) - b.values(n - 1 - j)));
  }
  return worst;
}

double exact_solution_neumann_outflow(double v, double k, double f, double t_p,
                                      double x) {
  // u = (f/v) x + (c/r)(e^{r x} - 1), r = v/k, with k u'(1) = t_p fixing
  // c = (t_p/k - f/v) e^{-r}; written with non-positive exponents for r > 0.
  const double r = v / k;
  const double c = t_p / k - f / v;
  return (f / v) * x + (c / r) * (std::exp(r * (x - 1.0)) - std::exp(-r));
}

}  // namespace advdiff
