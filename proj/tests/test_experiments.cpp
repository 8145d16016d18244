#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "debond/experiments.hpp"
#include "support.hpp"

using namespace debond;
using testing_support::problem;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("debond_test_" + name);
  fs::remove_all(d);
  return d;
}

nlohmann::json ramp_patch() {
  return {{"toughness", {{"kappa0", 0.5}}},
          {"loading", {{"kind", "ramp"}, {"from", 1.0}, {"to", 1.6}, {"t1", 1.0}}},
          {"t_end", 1.0}};
}

}  // namespace

TEST(Helpers, MonotoneDecreaseWithSlack) {
  EXPECT_TRUE(monotone_decrease({4, 2, 1}));
  EXPECT_TRUE(monotone_decrease({1.0, 1.09, 1.0}));
  EXPECT_FALSE(monotone_decrease({1.0, 1.2}));
  EXPECT_TRUE(monotone_decrease({}));
}

TEST(Helpers, ExtrapolationIsExactOnLines) {
  EXPECT_NEAR(extrapolate_to_zero({0.2, 0.1, 0.05}, {3.0, 2.5, 2.25}), 2.0, 1e-14);
  EXPECT_EQ(extrapolate_to_zero({0.1}, {7.0}), 7.0);
  EXPECT_THROW(extrapolate_to_zero({}, {}), Error);
}

TEST(Sweep, RejectsBadEpsilonLists) {
  try {
    SweepOptions::from_json({{"sweep", {{"eps", {0.1, 0.2}}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
    EXPECT_EQ(e.pointer(), "/sweep/eps/1");
  }
  SweepOptions o;
  o.eps = {0.1, -0.05};
  EXPECT_THROW(epsilon_sweep(problem(ramp_patch()), o), Error);
}

TEST(Sweep, RepeatedEntryIsDeterministic) {
  SweepOptions o;
  o.eps = {0.1};
  Problem p = problem(ramp_patch());
  SweepReport a = epsilon_sweep(p, o), b = epsilon_sweep(p, o);
  ASSERT_EQ(a.entries.size(), 1u);
  EXPECT_EQ(a.entries[0].ell, b.entries[0].ell);
  EXPECT_EQ(a.entries[0].front_error, b.entries[0].front_error);
  EXPECT_EQ(a.start, 1.0);
  auto da = scratch("sweep_a"), db = scratch("sweep_b");
  write_sweep(a, da.string());
  write_sweep(b, db.string());
  for (const char* f : {"sweep.csv", "fronts.csv", "energy.csv"}) EXPECT_EQ(slurp(da / f), slurp(db / f)) << f;
}

TEST(Sweep, MetricsShrinkWithEpsilon) {
  SweepOptions o;
  o.eps = {0.2, 0.1, 0.05};
  SweepReport r = epsilon_sweep(problem(ramp_patch()), o);
  EXPECT_TRUE(r.front_monotone);
  EXPECT_TRUE(r.trace_monotone);
  EXPECT_TRUE(r.kinetic_monotone);
  for (const auto& e : r.entries) {
    EXPECT_GE(e.front_error, 0.0);
    EXPECT_GE(e.trace_error, 0.0);
    EXPECT_GE(e.kinetic_max, 0.0);
  }
}

TEST(Jump, StableStartDoesNotMove) {
  JumpOptions o;
  o.with_sweep = false;
  o.t_cap = 10;
  o.ds = 0.02;
  JumpReport r = initial_jump(problem(), o);
  EXPECT_TRUE(r.plateaued);
  EXPECT_EQ(r.ell1, 1.0);
  EXPECT_EQ(r.plateau_time, 2.0);
  EXPECT_TRUE(r.stable);
}

TEST(Jump, UnrescaledProblemFreezesLoading) {
  Problem p = unrescaled_problem(problem(ramp_patch()), 0.01, 5.0);
  EXPECT_EQ(p.params.epsilon, 1.0);
  EXPECT_EQ(p.params.ds, 0.01);
  EXPECT_EQ(p.loading(3.0), 1.0);
  EXPECT_EQ(p.init.u1(0.5), 0.0);
}

TEST(Jump, NeedsDamping) {
  JumpOptions o;
  o.with_sweep = false;
  EXPECT_THROW(initial_jump(problem({{"nu", 0.0}}), o), Error);
}

TEST(Verify, StationaryPassesEveryCheck) {
  VerifyReport r = verify_run(problem(), 0);
  EXPECT_TRUE(r.pass) << r.checks.dump(1);
  EXPECT_EQ(r.checks["seed"], 0);
}

TEST(Verify, SeededPointsAreReproducible) {
  Problem p = problem(ramp_patch());
  Solution s = solve_coupled(p);
  auto a = magic_identity_residuals(*s.solver, 7, 50), b = magic_identity_residuals(*s.solver, 7, 50);
  ASSERT_EQ(a.size(), 50u);
  EXPECT_EQ(a, b);
  for (double v : a) EXPECT_LE(v, 1e-8);
}

TEST(Writers, RunFilesHaveHeadersAndRows) {
  Problem p = problem(ramp_patch());
  RunReport r = simulate(p);
  auto d = scratch("run");
  write_run(r, d.string(), true);
  std::ifstream ts(d / "timeseries.csv");
  std::string header;
  std::getline(ts, header);
  EXPECT_EQ(header, "t,ell,ell_dot,G0,E,A,W,Etilde,balance_residual");
  std::size_t rows = 0;
  for (std::string line; std::getline(ts, line);) ++rows;
  EXPECT_EQ(rows, r.field.steps());
  EXPECT_TRUE(fs::exists(d / "field.csv"));
  auto summary = nlohmann::json::parse(slurp(d / "summary.json"));
  EXPECT_EQ(summary["steps"], r.field.steps());
  EXPECT_EQ(summary["decay"]["m"], r.decay.constants.m);
}

TEST(Writers, UnwritableDirectoryIsAnIoError) {
  auto d = scratch("blocked");
  fs::create_directories(d.parent_path());
  { std::ofstream(d.string()) << "file in the way"; }
  QuasistaticEvolution ev;
  try {
    write_verify(VerifyReport{}, (d / "sub").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
  fs::remove(d);
}
