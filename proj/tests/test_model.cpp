#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "debond/model.hpp"

using debond::Error;
using debond::ErrorKind;
using debond::Loading;
using debond::Toughness;

namespace {

Toughness bound(Toughness k, double ell0 = 1.0, double x_max = 64.0) {
  k.bind_domain(ell0, x_max);
  return k;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::io;
}

}  // namespace

TEST(Toughness, ConstantValue) { EXPECT_DOUBLE_EQ(bound(Toughness::constant(0.5))(3.0), 0.5); }

TEST(Toughness, IdentityPower) { EXPECT_DOUBLE_EQ(bound(Toughness::power(1.0, 1.0))(2.0), 2.0); }

TEST(Toughness, SampledInterpolates) {
  auto k = bound(Toughness::sampled({1.0, 2.0}, {0.5, 0.7}), 1.0, 2.0);
  EXPECT_NEAR(k(1.5), 0.6, 1e-15);
}

TEST(Toughness, OutOfDomainIsRangeError) {
  auto k = bound(Toughness::constant(0.5), 1.0, 10.0);
  EXPECT_EQ(kind_of([&] { k(0.5); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { k(11.0); }), ErrorKind::range);
}

TEST(Toughness, PhiAndInverse) {
  auto k = bound(Toughness::constant(0.5));
  EXPECT_DOUBLE_EQ(k.phi(2.0), 2.0);
  EXPECT_NEAR(k.phi_inv(2.0), 2.0, 1e-12);
  auto lin = bound(Toughness::power(1.0, 1.0));
  EXPECT_NEAR(lin.phi_inv(8.0), 2.0, 1e-12);
}

TEST(Toughness, PhiInverseRoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(1.0, 60.0);
  std::vector<Toughness> models = {bound(Toughness::constant(0.3)), bound(Toughness::affine(0.2, 0.05)),
                                   bound(Toughness::power(2.0, -1.5)),
                                   bound(Toughness::sampled({1, 3, 10, 64}, {1.0, 0.6, 0.26, 0.12}))};
  for (const auto& k : models) {
    for (int n = 0; n < 200; ++n) {
      double x = xs(rng);
      EXPECT_NEAR(k.phi_inv(k.phi(x)), x, 1e-10 * x);
    }
  }
}

TEST(Toughness, InverseNeedsMonotonePhi) {
  auto k = bound(Toughness::power(0.5, -2.0));
  EXPECT_EQ(kind_of([&] { k.phi_inv(0.5); }), ErrorKind::monotonicity);
  auto c = bound(Toughness::constant(1.0), 1.0, 4.0);
  EXPECT_EQ(kind_of([&] { c.phi_inv(17.0); }), ErrorKind::range);
}

TEST(Toughness, ConditionFlags) {
  auto w = Loading::constant(1.0);
  auto c = bound(Toughness::constant(0.5)).conditions(w, 1.0, 1e-3);
  EXPECT_TRUE(c.K0 && c.K1 && c.K2 && c.K3);

  auto flat = bound(Toughness::power(0.5, -2.0)).conditions(w, 1.0, 1e-3);
  EXPECT_TRUE(flat.K1);
  EXPECT_FALSE(flat.K2);
  EXPECT_FALSE(flat.K0);

  auto harmonic = bound(Toughness::power(1.0, -1.0)).conditions(w, 1.0, 1e-3);
  EXPECT_TRUE(harmonic.K0);
  EXPECT_TRUE(harmonic.K2);
}

TEST(Toughness, KwComparesLimitWithLoading) {
  // phi = x for kappa = 1/x, unbounded, so any bounded loading is admissible.
  EXPECT_TRUE(bound(Toughness::power(1.0, -1.0)).conditions(Loading::constant(1.0), 1.0, 1e-3).KW);
  // phi = 1/2 constant: needs 1/2 > w^2 / 2.
  auto flat = bound(Toughness::power(0.5, -2.0));
  EXPECT_FALSE(flat.conditions(Loading::constant(1.0), 1.0, 1e-3).KW);
  EXPECT_TRUE(flat.conditions(Loading::constant(0.5), 1.0, 1e-3).KW);
}

TEST(RunningMax, Examples) {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  auto up = debond::running_max_w_squared(Loading::polynomial({1.0, 1.0}), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(up[i], std::pow(1 + grid[i], 2), 1e-14);

  auto down = debond::running_max_w_squared(Loading::polynomial({1.0, -1.0}), grid);
  for (double v : down) EXPECT_DOUBLE_EQ(v, 1.0);

  std::vector<double> g2;
  for (int i = 0; i <= 400; ++i) g2.push_back(2 * std::numbers::pi * i / 400.0);
  auto s = debond::running_max_w_squared(Loading::sinusoid(0.0, 1.0, 1.0, 0.0), g2);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    double expect = g2[i] <= std::numbers::pi / 2 ? std::pow(std::sin(g2[i]), 2) : 1.0;
    EXPECT_NEAR(s[i], expect, 1e-12);
  }
}

TEST(RunningMax, MonotoneDominatingIdempotent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> t, w;
    for (int i = 0; i <= 30; ++i) {
      t.push_back(i * 0.1);
      w.push_back(u(rng));
    }
    auto load = Loading::sampled(t, w);
    auto m = debond::running_max_w_squared(load, t);
    EXPECT_DOUBLE_EQ(m.front(), w.front() * w.front());
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_GE(m[i], w[i] * w[i]);
      if (i) EXPECT_GE(m[i], m[i - 1]);
    }
    std::vector<double> root;
    for (double v : m) root.push_back(std::sqrt(v));
    auto again = debond::running_max_w_squared(Loading::sampled(t, root), t);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(again[i], m[i], 1e-14 * (1 + m[i]));
  }
}

TEST(Loading, DerivativeIntegratesBack) {
  std::vector<Loading> loads = {Loading::ramp(0.5, 1.5, 0.2, 0.8), Loading::polynomial({1.0, -0.3, 0.2}),
                                Loading::sinusoid(1.0, 0.3, 2.0, 0.4),
                                Loading::sampled({0, 0.5, 1.0}, {1.0, 1.4, 0.9})};
  for (const auto& w : loads) {
    const int n = 20000;
    double acc = 0.0, h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
      double a = i * h;
      acc += h / 6 * (w.derivative(a + 1e-13) + 4 * w.derivative(a + h / 2) + w.derivative(a + h - 1e-13));
    }
    EXPECT_NEAR(acc, w(1.0) - w(0.0), 1e-8);
  }
}

TEST(InitialData, CompatibilityIsExact) {
  auto w = Loading::constant(1.0);
  auto ok = debond::InitialData::equilibrium(1.0, 2.0);
  EXPECT_NO_THROW(ok.check_compatibility(w));
  debond::InitialData bad(debond::PiecewiseLinear({0, 2}, {1.0 + 1e-14, 0.0}), debond::PiecewiseLinear({0, 2}, {0, 0}),
                          2.0);
  EXPECT_EQ(kind_of([&] { bad.check_compatibility(w); }), ErrorKind::validation);
}

TEST(Problem, ParseReportsPointer) {
  nlohmann::json doc = {{"epsilon", 0.1}, {"nu", 0.5},  {"ell0", 1.0},
                        {"t_end", 1.0},   {"ds", 1e-3}, {"toughness", {{"kind", "constant"}, {"kappa0", -1.0}}},
                        {"loading", {{"kind", "constant"}, {"value", 1.0}}},
                        {"u0", {{"kind", "affine"}}},
                        {"u1", {{"kind", "zero"}}}};
  try {
    debond::parse_problem(doc);
    FAIL() << "negative toughness accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
    EXPECT_EQ(e.pointer(), "/toughness/kappa0");
  }
  doc["toughness"]["kappa0"] = 0.5;
  doc["ds"] = 0.02;
  try {
    debond::parse_problem(doc);
    FAIL() << "coarse ds accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.pointer(), "/ds");
  }
  doc["ds"] = 1e-3;
  auto p = debond::parse_problem(doc);
  EXPECT_DOUBLE_EQ(p.init.u0(0.0), 1.0);
  EXPECT_DOUBLE_EQ(p.init.u0(1.0), 0.0);
}
