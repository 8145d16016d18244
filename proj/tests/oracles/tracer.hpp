#pragma once

// Undamped reference solution u = a(t + eps x) + b(t - eps x), built point by
// point from the initial data, the boundary condition at x = 0 and the zero
// condition on the front. The tracer grows its own front with the same Euler
// rule, using G0 = 2 eps^2 b'(phi(t))^2, and inverts psi by bisection.

#include <algorithm>
#include <cmath>

#include "debond/front.hpp"
#include "debond/model.hpp"

namespace oracle {

class Tracer {
 public:
  Tracer(const debond::Problem& p)
      : p_(p), eps_(p.params.epsilon), ell0_(p.params.ell0), front_(eps_, ell0_, p.params.ds) {}

  const debond::Front& front() const { return front_; }

  void grow(double T) {
    const double ds = p_.params.ds;
    auto steps = static_cast<std::size_t>(std::ceil(T / ds - 1e-9));
    while (front_.knots() - 1 < steps) {
      std::size_t k = front_.knots() - 1;
      double t = static_cast<double>(k) * ds;
      double ell = front_.knot_value(k);
      double db = db_(t - eps_ * ell);
      double G = 2 * eps_ * eps_ * db * db;
      double kap = p_.toughness(ell);
      double rate = G > kap ? (G - kap) / (G + kap) / eps_ : 0.0;
      G0.push_back(G);
      front_.push(ell + ds * rate);
    }
  }

  double u(double t, double x) const {
    if (x > front_(t)) return 0.0;
    return a_(t + eps_ * x) + b_(t - eps_ * x);
  }

  std::vector<double> G0;

 private:
  double psi_inverse(double s) const {
    double lo = 0.0, hi = front_.end_time();
    for (int it = 0; it < 200 && hi - lo > 4e-16 * (1 + hi); ++it) {
      double mid = 0.5 * (lo + hi);
      (mid + eps_ * front_(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double omega(double s) const {
    double t = psi_inverse(s);
    return t - eps_ * front_(t);
  }
  double omega_rate(double s) const {
    double t = psi_inverse(s);
    double ds = front_.ds();
    auto k = static_cast<std::size_t>(std::clamp(std::ceil(t / ds) - 1.0, 0.0,
                                                 static_cast<double>(front_.knots() - 2)));
    double c = (front_.knot_value(k + 1) - front_.knot_value(k)) / ds;
    return (1 - eps_ * c) / (1 + eps_ * c);
  }

  double a_(double y) const {
    if (y <= eps_ * ell0_) {
      double x = y / eps_;
      return 0.5 * p_.init.u0(x) + 0.5 * eps_ * p_.init.int_u1(x);
    }
    return -b_(omega(y));
  }
  double b_(double y) const {
    if (y < 0) {
      double x = -y / eps_;
      return 0.5 * p_.init.u0(x) - 0.5 * eps_ * p_.init.int_u1(x);
    }
    return p_.loading(y) - a_(y);
  }
  double da_(double y) const {
    if (y <= eps_ * ell0_) {
      double x = y / eps_;
      return 0.5 * p_.init.du0(x) / eps_ + 0.5 * p_.init.u1(x);
    }
    return -db_(omega(y)) * omega_rate(y);
  }
  double db_(double y) const {
    if (y < 0) {
      double x = -y / eps_;
      return 0.5 * p_.init.u1(x) - 0.5 * p_.init.du0(x) / eps_;
    }
    return p_.loading.derivative(y) - da_(y);
  }

  const debond::Problem& p_;
  double eps_;
  double ell0_;
  debond::Front front_;
};

}  // namespace oracle
