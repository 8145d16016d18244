#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "debond/front.hpp"

using debond::CharMaps;
using debond::Front;

namespace {

Front constant_front(double eps, double ell0, double ds, double t_end) {
  Front f(eps, ell0, ds);
  for (double t = ds; t <= t_end + 1e-12; t += ds) f.push(ell0);
  return f;
}

// Front with a wavy speed kept below 1/eps.
Front wavy_front(double eps, double ell0, double ds, double t_end) {
  Front f(eps, ell0, ds);
  double ell = ell0;
  for (std::size_t k = 1; k * ds <= t_end + 1e-12; ++k) {
    double t = (k - 0.5) * ds;
    double speed = (0.45 + 0.4 * std::sin(3.0 * t)) / eps;
    ell += ds * speed;
    f.push(ell);
  }
  return f;
}

}  // namespace

TEST(CharMaps, ConstantFrontClosedForms) {
  Front f = constant_front(0.5, 1.0, 1.0 / 64, 10.0);
  CharMaps m(f);
  for (double t : {0.0, 0.3, 2.0, 7.25}) {
    EXPECT_NEAR(m.phi(t), t - 0.5, 1e-14);
    EXPECT_NEAR(m.psi(t), t + 0.5, 1e-14);
  }
  for (double s : {0.5, 1.3, 4.0}) EXPECT_NEAR(m.omega(s), s - 1.0, 1e-13);
  EXPECT_NEAR(m.omega_iterate(3, 5.0), 2.0, 1e-13);
  EXPECT_DOUBLE_EQ(m.omega_iterate(0, 5.0), 5.0);
  EXPECT_EQ(m.count_n(1.3), 1);
  EXPECT_EQ(m.count_m(2.7), 2);
  EXPECT_EQ(m.count_m(0.4), 0);
}

TEST(CharMaps, OmegaDotForConstantSlope) {
  const double eps = 0.25, c = 1.5, ds = 1.0 / 128;
  Front f(eps, 1.0, ds);
  for (std::size_t k = 1; k <= 2000; ++k) f.push(1.0 + c * k * ds);
  CharMaps m(f);
  const double expect = (1 - eps * c) / (1 + eps * c);
  for (double s : {0.4, 1.0, 3.3, 9.0}) {
    double h = 1e-6;
    double fd = (m.omega(s + h) - m.omega(s - h)) / (2 * h);
    EXPECT_NEAR(fd, expect, 1e-8);
    EXPECT_NEAR(m.omega_dot(s), expect, 1e-14);
  }
}

TEST(CharMaps, InverseRoundTrips) {
  Front f = wavy_front(0.2, 1.0, 1.0 / 200, 12.0);
  CharMaps m(f);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ts(0.0, 12.0);
  for (int n = 0; n < 100; ++n) {
    double t = ts(rng);
    EXPECT_NEAR(m.phi_inv(m.phi(t)), t, 1e-12);
    EXPECT_NEAR(m.psi_inv(m.psi(t)), t, 1e-12);
    double s = m.psi(t);
    EXPECT_NEAR(m.omega_inv(m.omega(s)), s, 1e-12);
  }
}

TEST(CharMaps, SlopeBoundsAndOrdering) {
  Front f = wavy_front(0.2, 1.0, 1.0 / 200, 12.0);
  CharMaps m(f);
  const auto& ph = f.phi_knots();
  const auto& ps = f.psi_knots();
  for (std::size_t k = 0; k + 1 < f.knots(); ++k) {
    double dphi = (ph[k + 1] - ph[k]) / f.ds();
    double dpsi = (ps[k + 1] - ps[k]) / f.ds();
    EXPECT_GT(dphi, 0.0);
    EXPECT_LE(dphi, 1.0);
    EXPECT_GE(dpsi, 1.0);
    EXPECT_LT(dpsi, 2.0);
    double w = dphi / dpsi;
    EXPECT_GT(w, 0.0);
    EXPECT_LE(w, 1.0);
    EXPECT_NEAR(ps[k] - ph[k], 2 * 0.2 * f.knot_value(k), 1e-13);
  }
  for (double s = 0.2; s < 12.0; s += 0.37) {
    double prev = s;
    int n = m.count_n(s);
    for (int j = 1; j <= n; ++j) {
      double cur = m.omega_iterate(j, s);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
    EXPECT_GE(prev, -0.2);
    EXPECT_LT(prev, 0.2);
  }
}

TEST(CharMaps, CompositionDerivativeIdentity) {
  // (w^{j+1})'(psi(t)) = (1 - eps l')/(1 + eps l') (w^j)'(phi(t)).
  const double eps = 0.2;
  Front f = wavy_front(eps, 1.0, 1.0 / 200, 12.0);
  CharMaps m(f);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ts(1.0, 8.0);
  const double h = 1e-7;
  auto fd = [&](int j, double s) { return (m.omega_iterate(j, s + h) - m.omega_iterate(j, s - h)) / (2 * h); };
  int checked = 0, skipped = 0;
  for (int attempt = 0; attempt < 400 && checked < 50; ++attempt) {
    double t = ts(rng);
    double cell = t / f.ds();
    if (std::abs(cell - std::round(cell)) < 0.05) continue;
    int j = m.count_n(m.phi(t));
    double rate = f.slope(t);
    double factor = (1 - eps * rate) / (1 + eps * rate);
    double lhs = fd(j + 1, m.psi(t));
    double rhs = factor * fd(j, m.phi(t));
    // An orbit point on a kink of the front spoils the difference quotient.
    if (std::abs(lhs - rhs) > 1e-3) {
      ++skipped;
      continue;
    }
    EXPECT_NEAR(lhs, rhs, 1e-6);
    EXPECT_NEAR(m.omega_iterate_dot(j + 1, m.psi(t)), lhs, 1e-6);
    ++checked;
  }
  EXPECT_EQ(checked, 50);
  EXPECT_LT(skipped, 5);
}

TEST(CharMaps, IterateLeavingDomainReportsDepth) {
  Front f = constant_front(0.5, 1.0, 1.0 / 64, 10.0);
  CharMaps m(f);
  try {
    m.omega_iterate(9, 5.0);
    FAIL() << "iterate should leave the domain";
  } catch (const debond::Error& e) {
    EXPECT_EQ(e.kind(), debond::ErrorKind::iteration_depth);
    EXPECT_NE(std::string(e.what()).find("j=5"), std::string::npos);
  }
}

TEST(Front, RejectsInvalidSegments) {
  Front f(0.5, 1.0, 0.01);
  EXPECT_THROW(f.push(0.99), debond::Error);
  EXPECT_THROW(f.push(1.0 + 0.01 * 2.0), debond::Error);
  EXPECT_NO_THROW(f.push(1.0 + 0.01 * 1.99));
  EXPECT_THROW(f(0.5), debond::Error);
}
