#pragma once

#include <vector>

#include "debond/dynamic_solver.hpp"

namespace debond {

struct FdResult {
  Front front;
  WaveField field;
  std::vector<double> G0;
};

// Leapfrog scheme for eps^2 u_tt - u_xx + nu eps u_t = 0 with dt = ds and
// dx = dt / eps (Courant number one) and a tracked front. Near the front the
// profile is closed by linear extrapolation to the zero value at ell(t); the
// front moves by explicit Euler with G0 = (1 + eps l')^2 u_x(t, ell)^2 / 2.
FdResult fd_oracle_solve(const Problem& problem, double courant = 1.0);

// Largest differences between two runs on the same grid: front values at
// common knots and the field on nodes inside both domains.
struct RunDistance {
  double front = 0.0;
  double field = 0.0;
};
RunDistance run_distance(const WaveField& a, const WaveField& b);

}  // namespace debond
