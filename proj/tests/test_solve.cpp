#include <doctest.h>

#include <cmath>
#include <random>

#include "advdiff/oracles.hpp"
#include "advdiff/solve.hpp"
#include "helpers.hpp"

using namespace advdiff;
using advdiff::testing::model_problem;
using advdiff::testing::thrown_code;

namespace {

TriDiagSystem make_system(std::initializer_list<double> sub,
                          std::initializer_list<double> diag,
                          std::initializer_list<double> sup,
                          std::initializer_list<double> rhs) {
  TriDiagSystem sys;
  sys.sub = Eigen::Map<const Eigen::VectorXd>(std::data(sub), sub.size());
  sys.diag = Eigen::Map<const Eigen::VectorXd>(std::data(diag), diag.size());
  sys.sup = Eigen::Map<const Eigen::VectorXd>(std::data(sup), sup.size());
  sys.rhs = Eigen::Map<const Eigen::VectorXd>(std::data(rhs), rhs.size());
  return sys;
}

}  // namespace

TEST_CASE("identity system returns the rhs") {
  const TriDiagSystem sys =
      make_system({0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}, {3.0, -1.0, 7.0});
  const NodalSolution sol = thomas_solve(sys);
  CHECK(sol.values(0) == 3.0);
  CHECK(sol.values(1) == -1.0);
  CHECK(sol.values(2) == 7.0);
  CHECK(sol.residual_inf == 0.0);
  CHECK_FALSE(sol.formulation.has_value());
}

TEST_CASE("three-node elimination, frozen values") {
  const TriDiagSystem sys =
      make_system({-1.0, -1.0}, {2.0, 2.0, 2.0}, {-1.0, -1.0}, {1.0, 0.0, 0.0});
  const NodalSolution sol = thomas_solve(sys);
  CHECK(sol.values(0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(sol.values(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sol.values(2) == doctest::Approx(0.25).epsilon(1e-15));
  const Eigen::VectorXd ref = oracles::dense_solve(sys);
  CHECK((sol.values - ref).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("diffusion solve is nodally exact") {
  const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
  const NodalSolution sol =
      solve(model_problem(0.0, 1.0), mesh, Formulation::Galerkin);
  for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
    const double x = mesh.nodes()(j);
    CHECK(std::abs(sol.values(j) - x * (1.0 - x) / 2.0) <= 1e-14);
  }
  CHECK(sol.formulation == Formulation::Galerkin);
  CHECK(sol.mesh.n_nodes() == 11);
}

TEST_CASE("singular systems raise ZeroPivot") {
  const TriDiagSystem sys = make_system({1.0}, {1.0, 1.0}, {1.0}, {1.0, 1.0});
  CHECK(thrown_code([&] { thomas_solve(sys); }) == ErrorCode::ZeroPivot);
}

TEST_CASE("random diagonally dominant systems match the dense oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size_dist(2, 50);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = size_dist(rng);
    TriDiagSystem sys;
    sys.sub.resize(n - 1);
    sys.sup.resize(n - 1);
    sys.diag.resize(n);
    sys.rhs.resize(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      sys.sub(i) = 2.0 * unit(rng) - 1.0;
      sys.sup(i) = 2.0 * unit(rng) - 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      if (i > 0) row += std::abs(sys.sub(i - 1));
      if (i + 1 < n) row += std::abs(sys.sup(i));
      sys.diag(i) = (row + 0.5 + unit(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
      sys.rhs(i) = 2.0 * unit(rng) - 1.0;
    }
    const Eigen::VectorXd fast = thomas_solve(sys).values;
    const Eigen::VectorXd ref = oracles::dense_solve(sys);
    CHECK((fast - ref).cwiseAbs().maxCoeff() <=
          1e-12 * ref.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("backward-style residual bound on the model problems") {
  const Mesh1D mesh = build_uniform(0.0, 1.0, 20);
  for (double ratio : {1.0, 10.0, 100.0}) {
    const Problem problem = model_problem(1.0, 1.0 / ratio);
    for (Formulation form : {Formulation::Galerkin,
                             Formulation::ArtificialDiffusion,
                             Formulation::WeightedVariational}) {
      const TriDiagSystem sys =
          form == Formulation::WeightedVariational
              ? build_weighted_difference_system(
                    problem, mesh, WeightFunction::build(problem, mesh))
              : build_system(problem, mesh, form);
      const NodalSolution sol = thomas_solve(sys);
      double norm_a = 0.0;
      for (Eigen::Index i = 0; i < sys.size(); ++i) {
        double row = std::abs(sys.diag(i));
        if (i > 0) row += std::abs(sys.sub(i - 1));
        if (i + 1 < sys.size()) row += std::abs(sys.sup(i));
        norm_a = std::max(norm_a, row);
      }
      const double bound =
          1e-10 * (norm_a * sol.values.cwiseAbs().maxCoeff() +
                   sys.rhs.cwiseAbs().maxCoeff());
      CHECK(sol.residual_inf <= bound);
    }
  }
}

TEST_CASE("condition estimate") {
  SUBCASE("identity") {
    const TriDiagSystem sys =
        make_system({0.0}, {1.0, 1.0}, {0.0}, {0.0, 0.0});
    CHECK(condition_estimate(sys) == doctest::Approx(1.0));
  }
  SUBCASE("diagonal ratio") {
    const TriDiagSystem sys =
        make_system({0.0}, {1.0, 10.0}, {0.0}, {0.0, 0.0});
    CHECK(condition_estimate(sys) == doctest::Approx(10.0));
  }
  SUBCASE("equilibration slashes the weighted condition number") {
    const Problem problem = model_problem(1.0, 0.01);
    const Mesh1D mesh = build_uniform(0.0, 1.0, 10);
    const WeightFunction weight = WeightFunction::build(problem, mesh);
    TriDiagSystem raw =
        assemble(problem, mesh, Formulation::WeightedVariational, weight);
    raw = apply_dirichlet(std::move(raw), 0, 0.0);
    raw = apply_dirichlet(std::move(raw), raw.size() - 1, 0.0);
    const double kappa_raw = condition_estimate(raw);
    const double kappa_diff = condition_estimate(
        build_weighted_difference_system(problem, mesh, weight));
    CHECK(kappa_raw > 1e6);
    CHECK(kappa_diff * 1e3 < kappa_raw);
  }
}
