#pragma once

// Quasistatic front by integrating lambda' = w w' / phi'(lambda) while the
// front is active (w w' > 0 and w^2 / 2 has reached phi(lambda)), with RK4
// substeps and bisection on the activation time.

#include <cmath>
#include <vector>

#include "debond/model.hpp"

namespace oracle {

inline std::vector<double> integrate_lambda(const debond::Toughness& k, const debond::Loading& w,
                                            const std::vector<double>& grid, double start, int substeps = 16) {
  auto gap = [&](double t, double lam) { return 0.5 * w(t) * w(t) - k.phi(lam); };
  auto rhs = [&](double t, double lam) {
    double p = w(t) * w.derivative(t);
    if (p <= 0 || gap(t, lam) < -1e-9 * (1 + k.phi(lam))) return 0.0;
    return p / k.dphi(lam);
  };
  auto rk4 = [&](double t, double lam, double h) {
    double k1 = rhs(t, lam);
    double k2 = rhs(t + h / 2, lam + h / 2 * k1);
    double k3 = rhs(t + h / 2, lam + h / 2 * k2);
    double k4 = rhs(t + h, lam + h * k3);
    return lam + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  };
  std::vector<double> out{start};
  double lam = start;
  for (std::size_t n = 1; n < grid.size(); ++n) {
    double h = (grid[n] - grid[n - 1]) / substeps;
    for (int j = 0; j < substeps; ++j) {
      double t = grid[n - 1] + j * h;
      if (gap(t, lam) < 0 && gap(t + h, lam) > 0) {
        double lo = t, hi = t + h;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          (gap(mid, lam) < 0 ? lo : hi) = mid;
        }
        lam = rk4(hi, lam, t + h - hi);
      } else {
        lam = rk4(t, lam, h);
      }
    }
    out.push_back(lam);
  }
  return out;
}

}  // namespace oracle
