#include "advdiff/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>

#include "advdiff/assembly.hpp"
#include "advdiff/oracles.hpp"
#include "advdiff/quadrature.hpp"
#include "advdiff/solve.hpp"
#include "advdiff/stencils.hpp"
#include "advdiff/verify.hpp"

namespace advdiff {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  auto ordered = [](double x) {
    std::int64_t bits;
    std::memcpy(&bits, &x, sizeof(x));
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const std::int64_t oa = ordered(a);
  const std::int64_t ob = ordered(b);
  return oa > ob ? static_cast<std::uint64_t>(oa - ob)
                 : static_cast<std::uint64_t>(ob - oa);
}

Problem ratio_problem(double ratio) {
  return validate({1.0, 1.0 / ratio, 1.0, 0.0, 1.0},
                  BoundaryCondition::dirichlet(0.0),
                  BoundaryCondition::dirichlet(0.0));
}

class Suite {
 public:
  void upper(const std::string& name, double value, double tol, int crit) {
    out_.checks.push_back({name, value, tol, value <= tol, crit});
  }
  void lower(const std::string& name, double value, double tol, int crit) {
    out_.checks.push_back({name, value, tol, value >= tol, crit});
  }
  void report(const std::string& name, double value) {
    out_.checks.push_back({name, value, kNaN, true, 0});
  }

  template <typename Body>
  void criterion(int id, const std::string& title, double budget_s,
                 Body&& body) {
    const size_t first = out_.checks.size();
    const auto start = std::chrono::steady_clock::now();
    body();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool pass = true;
    for (size_t i = first; i < out_.checks.size(); ++i) {
      pass = pass && out_.checks[i].pass;
    }
    out_.criteria.push_back({id, title, pass, seconds, budget_s});
  }

  AcceptanceOutcome finish() {
    out_.checks_pass = true;
    out_.pass_with_budgets = true;
    for (const auto& c : out_.criteria) {
      out_.checks_pass = out_.checks_pass && c.checks_pass;
      out_.pass_with_budgets = out_.pass_with_budgets && c.pass();
    }
    return std::move(out_);
  }

 private:
  AcceptanceOutcome out_;
};

void criterion_nodal_exactness(Suite& s) {
  s.criterion(1, "nodal exactness of the stabilized formulations", 1.0, [&] {
    for (Formulation form : {Formulation::WeightedVariational,
                             Formulation::ArtificialDiffusion}) {
      const ExactnessReport report =
          exactness_sweep({1.0, 10.0, 50.0, 100.0}, 10, form, 1e-10);
      for (const auto& entry : report.entries) {
        s.upper("nodal_error." + std::string(to_string(form)) +
                    ".vk=" + short_num(entry.ratio),
                entry.max_nodal_error, entry.tolerance, 1);
      }
    }
  });
}

void criterion_stencil_equivalence(Suite& s) {
  s.criterion(2, "closed-form and assembled stencil equivalence", 5.0, [&] {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
      return lo * std::pow(hi / lo, unit(rng));
    };
    double worst_ulp = 0.0;
    double worst_row = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const double pe = log_uniform(1e-3, 20.0);
      const double h = log_uniform(0.01, 0.5);
      const double k = log_uniform(1e-3, 10.0);
      const double v = 2.0 * k * pe / h;

      const StencilCoeffs beta = optimal_stencil(v, k, h);
      const StencilCoeffs gamma = gamma_stencil(v, k, h);
      worst_ulp = std::max(
          {worst_ulp, static_cast<double>(ulp_distance(beta.left, gamma.left)),
           static_cast<double>(ulp_distance(beta.center, gamma.center)),
           static_cast<double>(ulp_distance(beta.right, gamma.right))});

      const Problem problem =
          validate({v, k, 1.0, 0.0, 4.0 * h}, BoundaryCondition::dirichlet(0.0),
                   BoundaryCondition::dirichlet(0.0));
      const Mesh1D mesh = build_uniform(0.0, 4.0 * h, 4);
      const WeightFunction weight = WeightFunction::build(problem, mesh);
      const TriDiagSystem equil =
          row_equilibrate(assemble(problem, mesh,
                                   Formulation::WeightedVariational, weight),
                          weighted_lumped_mass(problem, mesh, weight));
      const double scale =
          std::max({std::abs(gamma.left), std::abs(gamma.center),
                    std::abs(gamma.right)});
      const double dev = std::max({std::abs(equil.sub(1) - gamma.left),
                                   std::abs(equil.diag(2) - gamma.center),
                                   std::abs(equil.sup(2) - gamma.right)});
      worst_row = std::max(worst_row, dev / scale);
    }
    s.upper("stencil.beta_vs_gamma_ulp", worst_ulp, 1.0, 2);
    s.upper("stencil.assembled_row_rel_dev", worst_row, 1e-11, 2);
  });
}

void criterion_galerkin_pathology(Suite& s) {
  s.criterion(3, "Galerkin oscillation pathology at Pe = 5", 1.0, [&] {
    const Problem problem = ratio_problem(100.0);
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    s.lower("pathology.galerkin_max_error",
            nodal_exactness(problem, mesh, Formulation::Galerkin), 1e-2, 3);
    s.upper("pathology.weighted_max_error",
            nodal_exactness(problem, mesh, Formulation::WeightedVariational),
            1e-10, 3);
    s.upper("pathology.artificial_max_error",
            nodal_exactness(problem, mesh, Formulation::ArtificialDiffusion),
            1e-10, 3);
    s.lower("pathology.error_sign_alternation_fraction",
            oscillation_fraction(problem, mesh, Formulation::Galerkin), 0.70,
            3);
  });
}

void criterion_vainberg(Suite& s) {
  s.criterion(4, "symmetry dichotomy of the assembled matrices", 1.0, [&] {
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    for (double ratio : {1.0, 10.0, 50.0, 100.0}) {
      const SymmetryReport report = vainberg_symmetry(
          ratio_problem(ratio), mesh, Formulation::WeightedVariational);
      s.upper("vainberg.weighted_rel_asymmetry.vk=" +
                  short_num(ratio),
              report.asymmetry, 1e-12, 4);
    }
    const Problem varying =
        validate({Coefficient([](double x) { return 1.0 + x; }), 1.0, 1.0,
                  0.0, 1.0},
                 BoundaryCondition::dirichlet(0.0),
                 BoundaryCondition::dirichlet(0.0));
    s.upper("vainberg.weighted_rel_asymmetry.varying_velocity",
            vainberg_symmetry(varying, mesh, Formulation::WeightedVariational)
                .asymmetry,
            1e-12, 4);
    for (double v : {0.5, 1.0, 10.0}) {
      const Problem problem =
          validate({v, 1.0, 1.0, 0.0, 1.0}, BoundaryCondition::dirichlet(0.0),
                   BoundaryCondition::dirichlet(0.0));
      const SymmetryReport report =
          vainberg_symmetry(problem, mesh, Formulation::Galerkin);
      s.upper("vainberg.galerkin_asymmetry_minus_v.v=" + short_num(v),
              std::abs(report.max_abs_asymmetry - v), 1e-13, 4);
    }
  });
}

void criterion_stationarity(Suite& s) {
  s.criterion(5, "stationarity of the weighted solution", 1.0, [&] {
    for (double ratio : {1.0, 10.0, 100.0}) {
      const Problem problem = ratio_problem(ratio);
      const Mesh1D mesh = build_uniform(0.0, 1.0, 20);
      const NodalSolution sol =
          solve(problem, mesh, Formulation::WeightedVariational);
      const double i_value = functional_value(problem, mesh, sol.values);
      const double derivative = stationarity_check(problem, mesh, sol);
      s.upper("stationarity.weighted.vk=" +
                  short_num(ratio),
              derivative, 1e-8 * std::abs(i_value) + 1e-10, 5);
    }
  });
}

void criterion_special_functions(Suite& s) {
  s.criterion(6, "special-function accuracy and limits", kNaN, [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x =
          1e-8 * std::pow(30.0 / 1e-8, static_cast<double>(i) / 99.0);
      const double ref = oracles::cothm_reference(x);
      worst = std::max(worst, std::abs(cothm(x) - ref) / std::abs(ref));
    }
    s.upper("cothm.rel_error_vs_reference", worst, 1e-15, 6);

    const double k = 1.0, h = 0.1;
    const double v_small = 2.0 * k * 1e-6 / h;
    s.upper("kbar.vanishing_limit_pe=1e-6", std::abs(kbar(v_small, k, h)),
            1e-12, 6);
    const double v_large = 2.0 * k * 50.0 / h;
    s.upper("kbar.upwind_limit_pe=50",
            std::abs(k + kbar(v_large, k, h) - v_large * h / 2.0), 1e-12, 6);
  });
}

void criterion_convergence(Suite& s) {
  s.criterion(7, "L2 convergence rates", 2.0, [&] {
    const std::vector<Eigen::Index> sizes = {8, 16, 32, 64};
    struct Case {
      Formulation form;
      double ratio;
    };
    for (const Case& c : {Case{Formulation::Galerkin, 1.0},
                          Case{Formulation::WeightedVariational, 10.0}}) {
      const ConvergenceReport report =
          convergence_study(ratio_problem(c.ratio), c.form, sizes);
      double worst = 0.0;
      for (double rate : report.rates) {
        worst = std::max(worst, std::abs(rate - 2.0));
      }
      s.upper("convergence.max_rate_dev." + std::string(to_string(c.form)) +
                  ".vk=" + short_num(c.ratio),
              worst, 0.15, 7);
    }
  });
}

void criterion_oracles(Suite& s) {
  s.criterion(8, "solver and integrator oracle checks", kNaN, [&] {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> size_dist(2, 50);
    double worst_solve = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index n = size_dist(rng);
      TriDiagSystem sys;
      sys.sub.resize(n - 1);
      sys.sup.resize(n - 1);
      sys.diag.resize(n);
      sys.rhs.resize(n);
      for (Eigen::Index i = 0; i < n - 1; ++i) {
        sys.sub(i) = 2.0 * unit(rng) - 1.0;
        sys.sup(i) = 2.0 * unit(rng) - 1.0;
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        double row = 0.0;
        if (i > 0) row += std::abs(sys.sub(i - 1));
        if (i < n - 1) row += std::abs(sys.sup(i));
        sys.diag(i) = (row + 0.5 + 1.5 * unit(rng)) *
                      (unit(rng) < 0.5 ? -1.0 : 1.0);
        sys.rhs(i) = 2.0 * unit(rng) - 1.0;
      }
      const Eigen::VectorXd fast = thomas_solve(sys).values;
      const Eigen::VectorXd ref = oracles::dense_solve(sys);
      worst_solve =
          std::max(worst_solve, (fast - ref).cwiseAbs().maxCoeff() /
                                    ref.cwiseAbs().maxCoeff());
    }
    s.upper("oracle.thomas_vs_dense_rel", worst_solve, 1e-12, 8);

    double worst_int = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const double u = std::pow(10.0, -3.0 + 4.0 * unit(rng)) *
                       (unit(rng) < 0.5 ? -1.0 : 1.0);
      const double length = 0.1 * std::pow(20.0, unit(rng));
      const double a = u / length;
      // Nonnegative start keeps the positive-coefficient integrand one
      // signed, so the relative comparison is well conditioned.
      const double x0 = unit(rng);
      std::vector<double> poly(1 + static_cast<size_t>(4.0 * unit(rng)));
      for (double& c : poly) c = 0.1 + 1.9 * unit(rng);
      const double fast = integrate_exp_poly(a, poly, x0, x0 + length);
      const double ref =
          oracles::exp_poly_integral_reference(a, poly, x0, x0 + length);
      worst_int = std::max(worst_int, std::abs(fast - ref) / std::abs(ref));
    }
    s.upper("oracle.exp_poly_vs_reference_rel", worst_int, 1e-13, 8);
  });
}

void criterion_conditioning(Suite& s) {
  s.criterion(9, "conditioning of the weighted system", kNaN, [&] {
    const Problem problem = ratio_problem(100.0);
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    const WeightFunction weight = WeightFunction::build(problem, mesh);
    const TriDiagSystem raw =
        assemble(problem, mesh, Formulation::WeightedVariational, weight);
    const Eigen::VectorXd mass = weighted_lumped_mass(problem, mesh, weight);

    TriDiagSystem plain = apply_dirichlet(raw, 0, 0.0);
    plain = apply_dirichlet(std::move(plain), plain.size() - 1, 0.0);
    const double kappa_raw = condition_estimate(plain);

    TriDiagSystem scaled = symmetric_scale(raw, mass);
    scaled = apply_dirichlet(std::move(scaled), 0, 0.0);
    scaled = apply_dirichlet(std::move(scaled), scaled.size() - 1, 0.0);
    const double kappa_scaled = condition_estimate(scaled);

    s.report("conditioning.kappa1_unequilibrated", kappa_raw);
    s.report("conditioning.kappa1_symmetric_scaled", kappa_scaled);
    s.lower("conditioning.kappa1_improvement_ratio", kappa_raw / kappa_scaled,
            1e3, 9);
  });
}

void informational_reports(Suite& s) {
  // Measured but not asserted: behavior outside the derivation's assumptions.
  {
    const Problem problem =
        validate({10.0, 1.0, 1.0, 0.0, 1.0}, BoundaryCondition::dirichlet(0.0),
                 BoundaryCondition::neumann(1.0));
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    const NodalSolution sol =
        solve(problem, mesh, Formulation::WeightedVariational);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
      worst = std::max(worst,
                       std::abs(sol.values(j) - exact_solution_neumann_outflow(
                                                    10.0, 1.0, 1.0, 1.0,
                                                    mesh.nodes()(j))));
    }
    s.report("report.weighted_neumann_outflow_max_error", worst);
  }
  {
    const Problem problem = ratio_problem(10.0);
    Eigen::VectorXd nodes(11);
    for (int j = 0; j <= 10; ++j) {
      nodes(j) = std::pow(static_cast<double>(j) / 10.0, 1.5);
    }
    const Mesh1D graded{nodes};
    const NodalSolution sol =
        solve(problem, graded, Formulation::WeightedVariational);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < graded.n_nodes(); ++j) {
      worst = std::max(worst, std::abs(sol.values(j) -
                                       exact_solution(1.0, 0.1, 1.0,
                                                      graded.nodes()(j))));
    }
    s.report("report.weighted_graded_mesh_max_error", worst);
  }
  {
    const Problem problem = ratio_problem(10.0);
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    const NodalSolution galerkin = solve(problem, mesh, Formulation::Galerkin);
    s.report("report.galerkin_stationarity_value",
             stationarity_check(problem, mesh, galerkin));
  }
}

}  // namespace

bool CriterionSummary::within_budget() const {
  return std::isnan(budget_seconds) || seconds <= budget_seconds;
}

AcceptanceOutcome run_acceptance_suite() {
  Suite s;
  criterion_nodal_exactness(s);
  criterion_stencil_equivalence(s);
  criterion_galerkin_pathology(s);
  criterion_vainberg(s);
  criterion_stationarity(s);
  criterion_special_functions(s);
  criterion_convergence(s);
  criterion_oracles(s);
  criterion_conditioning(s);
  informational_reports(s);
  return s.finish();
}

}  // namespace advdiff
