#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polynewt/errors.hpp"
#include "polynewt/newton.hpp"
#include "random_systems.hpp"

using namespace polynewt;

namespace {

PolynomialSystem scalar_power(int p, double target) {
  HomogeneousTerm term;
  term.degree = p;
  term.entries.push_back({0, std::vector<int>(p, 0), 1.0});
  return build_system(1, {}, {term}, {-target});
}

PolynomialSystem mixed_scalar() {  // u^2 + u^3 - 2 = 0
  HomogeneousTerm quad;
  quad.degree = 2;
  quad.entries.push_back({0, {0, 0}, 1.0});
  HomogeneousTerm cubic;
  cubic.degree = 3;
  cubic.entries.push_back({0, {0, 0, 0}, 1.0});
  return build_system(1, {}, {quad, cubic}, {-2.0});
}

double rel_gap(const Vector& a, const Vector& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap / (1.0 + inf_norm(a));
}

}  // namespace

TEST_CASE("hand-derived single steps") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  const PolynomialSystem cube = scalar_power(3, 8.0);
  const PolynomialSystem quartic = scalar_power(4, 16.0);
  const PolynomialSystem mixed = mixed_scalar();

  const Matrix j_square = eval_jacobian(square, {3.0});
  const Matrix j_cube = eval_jacobian(cube, {3.0});
  const Matrix j_quartic = eval_jacobian(quartic, {3.0});
  const Matrix j_mixed = eval_jacobian(mixed, {2.0});
  CHECK(j_cube(0, 0) == 27.0);
  CHECK(j_quartic(0, 0) == 108.0);

  CHECK(std::abs(newton_step_standard(square, {3.0}, j_square)[0] - 13.0 / 6.0) <= 1e-14);
  CHECK(std::abs(newton_step_standard(cube, {3.0}, j_cube)[0] - 62.0 / 27.0) <= 1e-14);

  CHECK(std::abs(newton_step_function_free(square, {3.0}, j_square)[0] - 13.0 / 6.0) <= 1e-14);
  CHECK(std::abs(newton_step_function_free(cube, {3.0}, j_cube)[0] - 62.0 / 27.0) <= 1e-14);
  CHECK(std::abs(newton_step_function_free(mixed, {2.0}, j_mixed)[0] - 1.375) <= 1e-14);
  CHECK(std::abs(newton_step_function_free(quartic, {3.0}, j_quartic)[0] - 259.0 / 108.0) <=
        1e-14);
}

TEST_CASE("both steps leave a root fixed") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  const Matrix j = eval_jacobian(square, {2.0});
  CHECK(std::abs(newton_step_standard(square, {2.0}, j)[0] - 2.0) <= 1e-13);
  CHECK(std::abs(newton_step_function_free(square, {2.0}, j)[0] - 2.0) <= 1e-13);
}

TEST_CASE("function-free step refuses linear systems") {
  const PolynomialSystem lin = build_system(1, {{0, 0, 2.0}}, {}, {-4.0});
  const Matrix j = eval_jacobian(lin, {1.0});
  CHECK_THROWS_AS(newton_step_function_free(lin, {1.0}, j), NoNonlinearTerm);
}

TEST_CASE("steps propagate singular Jacobians") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  const Matrix j0 = eval_jacobian(square, {0.0});
  CHECK_THROWS_AS(newton_step_standard(square, {3.0}, j0), SingularMatrix);
  CHECK_THROWS_AS(newton_step_function_free(square, {3.0}, j0), SingularMatrix);
}

TEST_CASE("step equivalence on random systems sharing one factorization") {
  testgen::Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    const int n = testgen::corpus_dimension(i);
    const PolynomialSystem sys =
        testgen::random_system(n, testgen::degree_subsets()[i % 7], 0.2, 700 + i);
    const Vector u = testgen::random_point(n, rng);
    const LuFactorization lu(eval_jacobian(sys, u));
    const Vector a = newton_step_standard(sys, u, lu);
    const Vector b = newton_step_function_free(sys, u, lu);
    CHECK(rel_gap(a, b) <= 1e-11);
  }
}

TEST_CASE("solve on u^2 - 4 matches the hand recursion and both schemes agree") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;
  config.residual_tol = 1e-12;

  config.scheme = Scheme::Standard;
  const SolveResult std_run = solve(square, {3.0}, config);
  REQUIRE(std_run.trace.status == SolveStatus::ConvergedResidual);
  REQUIRE(std_run.trace.records.size() >= 4);
  CHECK(std::abs(std_run.trace.records[1].u[0] - 13.0 / 6.0) <= 1e-7);
  CHECK(std::abs(std_run.trace.records[2].u[0] - 2.0064103) <= 1e-7);
  CHECK(std::abs(std_run.trace.records[3].u[0] - 2.0000102) <= 1e-7);
  CHECK(std_run.trace.records.size() - 1 <= 6);
  CHECK(std::abs(std_run.u[0] - 2.0) <= 1e-12);

  config.scheme = Scheme::FunctionFree;
  const SolveResult ff_run = solve(square, {3.0}, config);
  REQUIRE(ff_run.trace.status == SolveStatus::ConvergedResidual);
  REQUIRE(ff_run.trace.records.size() == std_run.trace.records.size());
  for (std::size_t k = 0; k < ff_run.trace.records.size(); ++k)
    CHECK(rel_gap(std_run.trace.records[k].u, ff_run.trace.records[k].u) <= 1e-12);
  CHECK(ff_run.trace.counters.homogeneous(2) == 0);
  CHECK(ff_run.trace.counters.residual_reconstructions ==
        static_cast<long long>(ff_run.trace.records.size()));
  CHECK(std_run.trace.counters.residual_reconstructions == 0);
}

TEST_CASE("quadratic convergence ratios for u^2 - 4 from u0 = 3") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;
  config.residual_tol = 1e-14;
  const SolveResult run = solve(square, {3.0}, config);
  REQUIRE(run.trace.records.size() >= 5);
  for (int k = 1; k <= 3; ++k) {
    const double ek = std::abs(run.trace.records[k].u[0] - 2.0);
    const double ek1 = std::abs(run.trace.records[k + 1].u[0] - 2.0);
    const double ratio = ek1 / (ek * ek);
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 1.0);
  }
}

TEST_CASE("singular Jacobian at the starting point is reported, not thrown") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;
  for (Scheme scheme : {Scheme::Standard, Scheme::FunctionFree}) {
    config.scheme = scheme;
    const SolveResult run = solve(square, {0.0}, config);
    CHECK(run.trace.status == SolveStatus::SingularJacobian);
    REQUIRE(run.trace.records.size() == 1);
    CHECK(run.trace.records[0].k == 0);
  }
}

TEST_CASE("divergence detection") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;

  // Magnitude blow-up: start beyond the 1e12 guard.
  const SolveResult big = solve(square, {3.0e12}, config);
  CHECK(big.trace.status == SolveStatus::Diverged);

  // Non-finite residual: u^8 at 1e40 overflows.
  const PolynomialSystem oct = scalar_power(8, 256.0);
  const SolveResult overflow = solve(oct, {1e40}, config);
  CHECK(overflow.trace.status == SolveStatus::Diverged);
}

TEST_CASE("stopping rules: step tolerance and iteration cap") {
  const PolynomialSystem square = scalar_power(2, 4.0);

  // u^2 = 2 has an irrational root, so the residual never reaches the exact
  // zero that residual_tol = 0 demands and only the step rule can stop.
  const PolynomialSystem sqrt2 = scalar_power(2, 2.0);
  SolverConfig by_step;
  by_step.residual_tol = 0.0;
  by_step.step_tol = 1e-12;
  const SolveResult step_run = solve(sqrt2, {1.5}, by_step);
  CHECK(step_run.trace.status == SolveStatus::ConvergedStep);
  CHECK(std::abs(step_run.u[0] - std::sqrt(2.0)) <= 1e-12);

  SolverConfig capped;
  capped.residual_tol = 1e-300;
  capped.step_tol = 0.0;
  capped.max_iters = 3;
  const SolveResult cap_run = solve(square, {3.0}, capped);
  CHECK(cap_run.trace.status == SolveStatus::MaxIters);
  CHECK(cap_run.trace.records.size() == 4);  // iterates 0..3
  CHECK(cap_run.trace.records.back().k == 3);
}

TEST_CASE("solve validates its inputs") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;

  SolverConfig no_tols = config;
  no_tols.residual_tol = 0.0;
  no_tols.step_tol = 0.0;
  CHECK_THROWS_AS(solve(square, {3.0}, no_tols), BadParam);

  SolverConfig negative = config;
  negative.residual_tol = -1.0;
  CHECK_THROWS_AS(solve(square, {3.0}, negative), BadParam);

  SolverConfig zero_iters = config;
  zero_iters.max_iters = 0;
  CHECK_THROWS_AS(solve(square, {3.0}, zero_iters), BadParam);

  SolverConfig bad_refresh = config;
  bad_refresh.jacobian_refresh = 0;
  CHECK_THROWS_AS(solve(square, {3.0}, bad_refresh), BadParam);

  CHECK_THROWS_AS(solve(square, {3.0, 1.0}, config), DimensionMismatch);

  const PolynomialSystem lin = build_system(1, {{0, 0, 2.0}}, {}, {-4.0});
  SolverConfig ff = config;
  ff.scheme = Scheme::FunctionFree;
  CHECK_THROWS_AS(solve(lin, {1.0}, ff), NoNonlinearTerm);
  // The standard scheme happily solves the linear system in one step.
  const SolveResult lin_run = solve(lin, {1.0}, config);
  CHECK(lin_run.trace.status == SolveStatus::ConvergedResidual);
  CHECK(std::abs(lin_run.u[0] - 2.0) <= 1e-14);
}

TEST_CASE("frozen-Jacobian mode keeps the schemes in lockstep") {
  const PolynomialSystem sys = testgen::random_system(12, {2, 3}, 0.25, 808);
  testgen::Rng rng(41);
  Vector u0 = testgen::random_point(12, rng);
  for (double& x : u0) x *= 0.3;

  SolverConfig config;
  config.jacobian_refresh = 3;
  config.max_iters = 30;

  config.scheme = Scheme::Standard;
  const SolveResult std_run = solve(sys, u0, config);
  config.scheme = Scheme::FunctionFree;
  const SolveResult ff_run = solve(sys, u0, config);

  // Trajectory equivalence is pinned for the first 10 iterations; beyond
  // that, roundoff drift between the two formulas is unspecified.
  const std::size_t common = std::min(
      {std_run.trace.records.size(), ff_run.trace.records.size(), std::size_t{11}});
  REQUIRE(common >= 3);
  for (std::size_t k = 0; k < common; ++k)
    CHECK(rel_gap(std_run.trace.records[k].u, ff_run.trace.records[k].u) <= 1e-9);

  // The frozen mode reassembles only at refresh points.
  const long long steps =
      static_cast<long long>(std_run.trace.records.size()) - 1;
  CHECK(std_run.trace.counters.jacobian_assemblies <= steps / 3 + 1);
  CHECK(ff_run.trace.counters.homogeneous(3) == 0);
}

TEST_CASE("finite-difference Jacobian oracle") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  const Matrix fd = finite_difference_jacobian(square, {3.0}, 1e-6);
  CHECK(std::abs(fd(0, 0) - 6.0) <= 1e-6);

  // Central differences on a pure linear system recover L for any step size
  // (up to roundoff in the perturbed points, so avoid very small h here).
  const PolynomialSystem lin = build_system(2, {{0, 1, 2.0}, {1, 0, -1.0}}, {}, {1.0, 1.0});
  for (double h : {1e-4, 1e-2, 0.5}) {
    const Matrix fdl = finite_difference_jacobian(lin, {0.3, -0.7}, h);
    CHECK(std::abs(fdl(0, 1) - 2.0) <= 1e-10);
    CHECK(std::abs(fdl(1, 0) + 1.0) <= 1e-10);
    CHECK(std::abs(fdl(0, 0)) <= 1e-10);
    CHECK(std::abs(fdl(1, 1)) <= 1e-10);
  }

  // Random degree-3 system, n = 20: entrywise agreement within 1e-6.
  const PolynomialSystem sys = testgen::random_system(20, {3}, 0.15, 909);
  testgen::Rng rng(43);
  const Vector u = testgen::random_point(20, rng);
  const Matrix ja = eval_jacobian(sys, u);
  const Matrix jf = finite_difference_jacobian(sys, u, 1e-6);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      worst = std::max(worst, std::abs(ja(i, j) - jf(i, j)) / (1.0 + std::abs(ja(i, j))));
  CHECK(worst <= 1e-6);

  CHECK_THROWS_AS(finite_difference_jacobian(square, {3.0}, 0.0), BadParam);
  CHECK_THROWS_AS(finite_difference_jacobian(square, {3.0, 1.0}, 1e-6), DimensionMismatch);
}

TEST_CASE("counters under the standard scheme include the top degree") {
  const PolynomialSystem square = scalar_power(2, 4.0);
  SolverConfig config;
  const SolveResult run = solve(square, {3.0}, config);
  CHECK(run.trace.status == SolveStatus::ConvergedResidual);
  CHECK(run.trace.counters.homogeneous(2) ==
        static_cast<long long>(run.trace.records.size()));
  CHECK(run.trace.counters.jacobian_assemblies ==
        static_cast<long long>(run.trace.records.size()) - 1);
  CHECK(run.trace.counters.linear_solves ==
        static_cast<long long>(run.trace.records.size()) - 1);
}
