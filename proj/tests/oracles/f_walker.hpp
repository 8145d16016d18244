#pragma once

// Independent evaluation of the auxiliary function f: each reflection step
// inverts psi by bisection on the front itself instead of the cached knot
// tables used by CharMaps.

#include <functional>

#include "debond/front.hpp"
#include "debond/model.hpp"

namespace oracle {

inline double bisect_psi(const debond::Front& front, double s) {
  const double eps = front.epsilon();
  double lo = 0.0, hi = front.end_time();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid + eps * front(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double walk_f(const debond::Front& front, const debond::Loading& w, const debond::InitialData& init,
                     double s) {
  const double eps = front.epsilon();
  const double ell0 = front.ell0();
  double acc = 0.0;
  while (s > eps * ell0) {
    acc += eps * w(s);
    double t = bisect_psi(front, s);
    s = t - eps * front(t);
  }
  if (s > 0) {
    double y = s / eps;
    return acc + eps * w(s) - 0.5 * eps * init.u0(y) - 0.5 * eps * eps * init.int_u1(y) - eps * w(0.0) +
           0.5 * eps * init.u0(0.0);
  }
  double y = -s / eps;
  return acc + 0.5 * eps * init.u0(y) - 0.5 * eps * eps * init.int_u1(y) - 0.5 * eps * init.u0(0.0);
}

}  // namespace oracle
