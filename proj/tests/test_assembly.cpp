#include <doctest.h>

#include <cmath>
#include <random>

#include "advdiff/assembly.hpp"
#include "advdiff/solve.hpp"
#include "advdiff/stencils.hpp"
#include "helpers.hpp"

using namespace advdiff;
using advdiff::testing::model_problem;
using advdiff::testing::rel_close;
using advdiff::testing::thrown_code;

TEST_CASE("Galerkin diffusion assembly on four elements") {
  const Problem problem = model_problem(0.0, 1.0);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 4);
  const TriDiagSystem sys = assemble(problem, mesh, Formulation::Galerkin);
  for (Eigen::Index i = 1; i <= 3; ++i) {
    CHECK(sys.diag(i) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(sys.sub(i - 1) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(sys.sup(i) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(sys.rhs(i) == doctest::Approx(0.25).epsilon(1e-14));
  }
  CHECK(sys.symmetric_hint);
}

TEST_CASE("weighted interior row reproduces the difference coefficients") {
  const Problem problem = model_problem(1.0, 0.02);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const WeightFunction weight = WeightFunction::build(problem, mesh);
  const TriDiagSystem equil =
      row_equilibrate(assemble(problem, mesh, Formulation::WeightedVariational,
                               weight),
                      weighted_lumped_mass(problem, mesh, weight));
  const StencilCoeffs gamma = gamma_stencil(1.0, 0.02, 0.1);
  const double scale = std::abs(gamma.center);
  for (Eigen::Index j = 1; j <= 9; ++j) {
    CHECK(std::abs(equil.sub(j - 1) - gamma.left) <= 1e-11 * scale);
    CHECK(std::abs(equil.diag(j) - gamma.center) <= 1e-11 * scale);
    CHECK(std::abs(equil.sup(j) - gamma.right) <= 1e-11 * scale);
    // Constant forcing: the equilibrated load is the forcing itself.
    CHECK(rel_close(equil.rhs(j), 1.0, 1e-12));
  }
}

TEST_CASE("artificial-diffusion interior row equals the optimal stencil") {
  const Problem problem = model_problem(1.0, 0.02);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const TriDiagSystem equil =
      row_equilibrate(assemble(problem, mesh, Formulation::ArtificialDiffusion),
                      lumped_mass(mesh));
  const StencilCoeffs opt = optimal_stencil(1.0, 0.02, 0.1);
  const double scale = std::abs(opt.center);
  for (Eigen::Index j = 1; j <= 9; ++j) {
    CHECK(std::abs(equil.sub(j - 1) - opt.left) <= 1e-13 * scale);
    CHECK(std::abs(equil.diag(j) - opt.center) <= 1e-13 * scale);
    CHECK(std::abs(equil.sup(j) - opt.right) <= 1e-13 * scale);
  }
}

TEST_CASE("artificial diffusion is Galerkin with augmented diffusivity") {
  const double v = 1.0, k = 0.02, h = 0.1;
  const Problem problem = model_problem(v, k);
  const Problem augmented = model_problem(v, k + kbar(v, k, h));
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const TriDiagSystem ad = assemble(problem, mesh,
                                    Formulation::ArtificialDiffusion);
  const TriDiagSystem gal = assemble(augmented, mesh, Formulation::Galerkin);
  const double scale = ad.diag.cwiseAbs().maxCoeff();
  CHECK((ad.diag - gal.diag).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  CHECK((ad.sub - gal.sub).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  CHECK((ad.sup - gal.sup).cwiseAbs().maxCoeff() <= 1e-13 * scale);
}

TEST_CASE("row equilibration") {
  const Problem problem = model_problem(1.0, 0.1);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 8);

  SUBCASE("unit scales change nothing") {
    const TriDiagSystem sys = build_system(problem, mesh, Formulation::Galerkin);
    const TriDiagSystem same =
        row_equilibrate(sys, Eigen::VectorXd::Ones(sys.size()));
    CHECK((same.diag - sys.diag).cwiseAbs().maxCoeff() == 0.0);
    CHECK((same.rhs - sys.rhs).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("the solution is invariant") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
    const TriDiagSystem sys = build_system(problem, mesh, Formulation::Galerkin);
    Eigen::VectorXd scales(sys.size());
    for (Eigen::Index i = 0; i < sys.size(); ++i) scales(i) = scale_dist(rng);
    const Eigen::VectorXd before = thomas_solve(sys).values;
    const Eigen::VectorXd after =
        thomas_solve(row_equilibrate(sys, scales)).values;
    CHECK((before - after).cwiseAbs().maxCoeff() <=
          1e-12 * before.cwiseAbs().maxCoeff());
  }

  SUBCASE("nonpositive scales are rejected") {
    const TriDiagSystem sys = build_system(problem, mesh, Formulation::Galerkin);
    Eigen::VectorXd scales = Eigen::VectorXd::Ones(sys.size());
    scales(3) = 0.0;
    CHECK(thrown_code([&] { row_equilibrate(sys, scales); }) ==
          ErrorCode::NonPositiveScale);
  }
}

TEST_CASE("Dirichlet elimination") {
  // 3-node diffusion system: sub = sup = -4, diag = 8, rhs = 0.25.
  const Problem problem = model_problem(0.0, 1.0);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 4);
  const TriDiagSystem sys = assemble(problem, mesh, Formulation::Galerkin);

  SUBCASE("homogeneous values leave the neighbors untouched") {
    const TriDiagSystem bc = apply_dirichlet(sys, 0, 0.0);
    CHECK(bc.diag(0) == 1.0);
    CHECK(bc.sup(0) == 0.0);
    CHECK(bc.sub(0) == 0.0);
    CHECK(bc.rhs(0) == 0.0);
    CHECK(bc.rhs(1) == sys.rhs(1));
  }

  SUBCASE("a known value moves to the adjacent rhs") {
    CHECK(sys.sub(0) == doctest::Approx(-4.0));
    const TriDiagSystem bc = apply_dirichlet(sys, 0, 2.0);
    CHECK(bc.rhs(1) == doctest::Approx(sys.rhs(1) + 8.0));
    CHECK(bc.diag(0) == 1.0);
    CHECK(bc.rhs(0) == 2.0);
  }

  SUBCASE("symmetry survives the elimination") {
    TriDiagSystem bc = apply_dirichlet(sys, 0, 1.5);
    bc = apply_dirichlet(std::move(bc), bc.size() - 1, -0.5);
    CHECK(bc.symmetric_hint);
    CHECK((bc.sub - bc.sup).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("interior nodes are rejected") {
    CHECK(thrown_code([&] { apply_dirichlet(sys, 2, 0.0); }) ==
          ErrorCode::InteriorDirichletUnsupported);
  }
}

TEST_CASE("Neumann flux insertion") {
  const Problem problem =
      validate({1.0, 1.0, 1.0, 0.0, 1.0}, BoundaryCondition::dirichlet(0.0),
               BoundaryCondition::neumann(1.0));
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const WeightFunction weight = WeightFunction::build(problem, mesh);

  SUBCASE("zero flux changes nothing") {
    const TriDiagSystem sys = assemble(problem, mesh, Formulation::Galerkin);
    const TriDiagSystem same = apply_neumann(sys, problem, End::Right, 0.0);
    CHECK((same.rhs - sys.rhs).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("Galerkin adds the raw flux") {
    const TriDiagSystem sys = assemble(problem, mesh, Formulation::Galerkin);
    const TriDiagSystem bc = apply_neumann(sys, problem, End::Right, 1.0);
    CHECK(bc.rhs(10) == doctest::Approx(sys.rhs(10) + 1.0));
  }

  SUBCASE("the weighted form scales the flux by alpha at the end") {
    const TriDiagSystem sys =
        assemble(problem, mesh, Formulation::WeightedVariational, weight);
    const TriDiagSystem bc =
        apply_neumann(sys, problem, End::Right, 1.0, &weight);
    CHECK(rel_close(bc.rhs(10) - sys.rhs(10), 0.36787944117144233, 1e-13));
  }

  SUBCASE("a Dirichlet end refuses a flux") {
    const TriDiagSystem sys = assemble(problem, mesh, Formulation::Galerkin);
    CHECK(thrown_code([&] { apply_neumann(sys, problem, End::Left, 1.0); }) ==
          ErrorCode::EndHasDirichlet);
  }
}

TEST_CASE("assembled symmetry by formulation") {
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);

  SUBCASE("the weighted matrix is symmetric, including varying coefficients") {
    ProblemSpec spec;
    spec.v = Coefficient([](double x) { return 1.0 + x; });
    spec.k = Coefficient([](double x) { return 1.0 + 0.2 * std::sin(x); });
    spec.f = 1.0;
    const Problem problem = validate(spec, BoundaryCondition::dirichlet(0.0),
                                     BoundaryCondition::dirichlet(0.0));
    const TriDiagSystem sys =
        assemble(problem, mesh, Formulation::WeightedVariational);
    CHECK(sys.symmetric_hint);
    CHECK((sys.sub - sys.sup).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("the Galerkin advection block is skewed by exactly v") {
    for (double v : {0.5, 1.0, 10.0}) {
      const TriDiagSystem sys =
          assemble(model_problem(v, 1.0), mesh, Formulation::Galerkin);
      CHECK_FALSE(sys.symmetric_hint);
      for (Eigen::Index i = 0; i < sys.size() - 1; ++i) {
        CHECK(std::abs(sys.sub(i) - sys.sup(i) + v) <= 1e-13 * v);
      }
    }
  }

  SUBCASE("zero velocity keeps Galerkin symmetric") {
    const TriDiagSystem sys =
        assemble(model_problem(0.0, 1.0), mesh, Formulation::Galerkin);
    CHECK(sys.symmetric_hint);
    CHECK((sys.sub - sys.sup).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("mesh and problem domains must agree") {
  const Problem problem = model_problem(1.0, 1.0);
  const Mesh1D wrong = build_uniform(0.0, 2.0, 4);
  CHECK(thrown_code([&] { assemble(problem, wrong, Formulation::Galerkin); }) ==
        ErrorCode::MeshProblemMismatch);
}

TEST_CASE("difference-form weighted system matches the equilibrated route") {
  const Problem problem = model_problem(10.0, 1.0);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const WeightFunction weight = WeightFunction::build(problem, mesh);

  TriDiagSystem route_a = row_equilibrate(
      assemble(problem, mesh, Formulation::WeightedVariational, weight),
      weighted_lumped_mass(problem, mesh, weight));
  route_a = apply_dirichlet(std::move(route_a), 0, 0.0);
  route_a = apply_dirichlet(std::move(route_a), route_a.size() - 1, 0.0);

  const TriDiagSystem route_b =
      build_weighted_difference_system(problem, mesh, weight);

  const double scale = route_a.diag.cwiseAbs().maxCoeff();
  CHECK((route_a.diag - route_b.diag).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((route_a.sub - route_b.sub).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((route_a.sup - route_b.sup).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK((route_a.rhs - route_b.rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("difference form stays finite far beyond the plain route's range") {
  // At v/k = 500 the raw weighted rows span ~e^{-450}; the difference form
  // keeps everything element-local and still solves to nodal exactness.
  const Problem problem = model_problem(1.0, 1.0 / 500.0);
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const NodalSolution sol =
      solve(problem, mesh, Formulation::WeightedVariational);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
    worst = std::max(worst, std::abs(sol.values(j) -
                                     exact_solution(1.0, 1.0 / 500.0, 1.0,
                                                    mesh.nodes()(j))));
  }
  CHECK(worst <= 1e-10);
}
