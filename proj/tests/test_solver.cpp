#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "debond/dynamic_solver.hpp"
#include "debond/fd_oracle.hpp"
#include "oracles/tracer.hpp"
#include "support.hpp"

using namespace debond;
using testing_support::problem;

TEST(GriffithRate, Examples) {
  const double eps = 0.1, kap = 0.4;
  EXPECT_NEAR(griffith_rate(2 * kap, kap, eps), 1.0 / (3 * eps), 1e-14);
  EXPECT_EQ(griffith_rate(kap, kap, eps), 0.0);
  EXPECT_EQ(griffith_rate(0.5 * kap, kap, eps), 0.0);
  double prev = 0.0;
  for (double m : {10.0, 100.0, 1000.0}) {
    double r = griffith_rate(m * kap, kap, eps);
    EXPECT_GT(r, prev);
    EXPECT_LT(r, 1.0 / eps);
    prev = r;
  }
  EXPECT_GT(prev, 0.99 / eps);
}

TEST(AdvanceFront, EulerStepsPerSample) {
  auto k = Toughness::constant(0.5);
  k.bind_domain(1.0, 64.0);
  Front f(0.1, 1.0, 1e-3);
  advance_front(f, {1.0, 0.2, 1.0}, k);
  ASSERT_EQ(f.knots(), 4u);
  const double step = 1e-3 / (3 * 0.1);
  EXPECT_NEAR(f.knot_value(1), 1.0 + step, 1e-15);
  EXPECT_NEAR(f.knot_value(2), 1.0 + step, 1e-15);
  EXPECT_GT(f.knot_value(3), f.knot_value(2));
}

TEST(CoupledSolver, StationaryEquilibrium) {
  Problem p = problem({{"t_end", 1.0}});
  Solution s = solve_coupled(p);
  const auto& F = s.field;
  double dev = 0.0;
  for (std::size_t k = 0; k < F.steps(); ++k) {
    EXPECT_EQ(F.ell[k], 1.0);
    for (std::size_t j = 0; j < F.u[k].size(); ++j)
      dev = std::max(dev, std::abs(F.u[k][j] - 0.9 * (1 - static_cast<double>(j) * F.dx)));
  }
  EXPECT_LE(dev, 1e-8);
  EXPECT_NEAR(s.solver->energy_release_rate(0.5), 0.81 / 2, 1e-12);
  for (double G : s.solver->G0()) EXPECT_NEAR(G, 0.81 / 2, 1e-8);
}

TEST(CoupledSolver, ZeroDataStaysZero) {
  Problem p = problem({{"loading", {{"value", 0.0}}}});
  Solution s = solve_coupled(p);
  for (const auto& row : s.field.u)
    for (double v : row) EXPECT_EQ(v, 0.0);
  for (double G : s.solver->G0()) EXPECT_EQ(G, 0.0);
}

TEST(CoupledSolver, UndampedMatchesTracer) {
  Problem p = problem({{"nu", 0.0},
                       {"t_end", 1.0},
                       {"ds", 2e-3},
                       {"toughness", {{"kappa0", 0.2}}},
                       {"loading", {{"kind", "ramp"}, {"from", 1.0}, {"to", 1.5}, {"t1", 2.0}}}});
  Solution s = solve_coupled(p);
  oracle::Tracer tr(p);
  tr.grow(1.0);
  ASSERT_GT(s.field.ell.back(), 1.05);
  for (std::size_t k = 0; k < tr.front().knots(); ++k)
    EXPECT_NEAR(s.solver->front().knot_value(k), tr.front().knot_value(k), 1e-10);
  const auto& F = s.field;
  for (std::size_t k = 0; k < F.steps(); k += 25)
    for (std::size_t j = 0; j < F.u[k].size(); j += 3)
      EXPECT_NEAR(F.u[k][j], tr.u(F.t[k], static_cast<double>(j) * F.dx), 1e-10);
}

TEST(CoupledSolver, DeterministicAcrossRuns) {
  Problem p = problem({{"loading", {{"kind", "ramp"}, {"from", 1.0}, {"to", 1.5}, {"t1", 0.5}}},
                       {"toughness", {{"kappa0", 0.2}}}});
  Solution a = solve_coupled(p), b = solve_coupled(p);
  EXPECT_EQ(a.solver->front().values(), b.solver->front().values());
  EXPECT_EQ(a.field.u, b.field.u);
  EXPECT_EQ(a.field.ut, b.field.ut);
}

// Invariants on random damped ramps: slopes in [0, 1/eps), left boundary
// exact, reflection rule at every knot.
TEST(CoupledSolver, InvariantsProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> top(1.0, 1.8), nu(0.0, 2.0), kap(0.15, 0.5), eps(0.1, 0.3);
  for (int n = 0; n < 5; ++n) {
    double e = eps(rng);
    Problem p = problem({{"epsilon", e},
                         {"ds", e / 40},
                         {"nu", nu(rng)},
                         {"t_end", 0.6},
                         {"toughness", {{"kappa0", kap(rng)}}},
                         {"loading", {{"kind", "ramp"}, {"from", 1.0}, {"to", top(rng)}, {"t1", 0.6}}}});
    Solution s = solve_coupled(p);
    const auto& fr = s.solver->front();
    for (std::size_t k = 1; k < fr.knots(); ++k) {
      double slope = (fr.knot_value(k) - fr.knot_value(k - 1)) / fr.ds();
      EXPECT_GE(slope, 0.0);
      EXPECT_LT(slope * e, 1.0);
    }
    const auto& F = s.field;
    for (std::size_t k = 0; k < F.steps(); ++k) {
      EXPECT_NEAR(F.u[k][0], p.loading(F.t[k]), 1e-12);
      if (k > 0) {
        double h = p.params.nu > 0 ? s.solver->reflection().value(F.t[k], F.ell[k]) : 0.0;
        EXPECT_NEAR(s.solver->f().reflection_residual(F.t[k]), p.params.nu * h, 1e-9);
      }
    }
  }
}

TEST(FdOracle, CourantAboveOneIsAConfigurationError) {
  Problem p = problem();
  try {
    fd_oracle_solve(p, 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::configuration);
  }
}

TEST(FdOracle, StationaryAndZeroData) {
  FdResult eq = fd_oracle_solve(problem());
  double dev = 0.0;
  for (std::size_t k = 0; k < eq.field.steps(); ++k)
    for (std::size_t j = 0; j < eq.field.u[k].size(); ++j)
      dev = std::max(dev, std::abs(eq.field.u[k][j] - 0.9 * (1 - static_cast<double>(j) * eq.field.dx)));
  EXPECT_LE(dev, 1e-8);
  for (double l : eq.field.ell) EXPECT_EQ(l, 1.0);

  FdResult zero = fd_oracle_solve(problem({{"loading", {{"value", 0.0}}}}));
  for (const auto& row : zero.field.u)
    for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(FdOracle, AgreesWithCharacteristicSolverUnderRefinement) {
  nlohmann::json patch = {{"t_end", 1.0},
                          {"toughness", {{"kappa0", 0.2}}},
                          {"loading", {{"kind", "ramp"}, {"from", 1.0}, {"to", 1.5}, {"t1", 2.0}}}};
  double prev = 0.0;
  for (double ds : {4e-3, 2e-3}) {
    patch["ds"] = ds;
    Problem p = problem(patch);
    RunDistance d = run_distance(solve_coupled(p).field, fd_oracle_solve(p).field);
    if (prev > 0) EXPECT_GE(prev / d.front, 1.8);
    prev = d.front;
  }
}
