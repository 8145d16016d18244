#pragma once

#include <cstddef>
#include <vector>

#include "debond/errors.hpp"

namespace debond {

// Piecewise-linear debonding front with knots t_k = k * ds.
class Front {
 public:
  Front(double epsilon, double ell0, double ds);

  static Front from_values(double epsilon, double ds, const std::vector<double>& values);

  double epsilon() const { return eps_; }
  double ell0() const { return ell_.front(); }
  double ds() const { return ds_; }

  std::size_t knots() const { return ell_.size(); }
  double knot_time(std::size_t k) const { return static_cast<double>(k) * ds_; }
  double knot_value(std::size_t k) const { return ell_[k]; }
  double end_time() const { return knot_time(ell_.size() - 1); }
  const std::vector<double>& values() const { return ell_; }

  // Appends the value at the next knot; rejects decreasing or too fast segments.
  void push(double ell);
  void truncate(std::size_t knots);

  double operator()(double t) const;
  // Segment slope; at a knot the left segment is used (first segment at t=0).
  double slope(double t) const;
  double max_value() const { return ell_.back(); }

  const std::vector<double>& phi_knots() const { return phi_; }
  const std::vector<double>& psi_knots() const { return psi_; }

 private:
  std::size_t segment_of(double t) const;

  double eps_;
  double ds_;
  std::vector<double> ell_;
  std::vector<double> phi_;
  std::vector<double> psi_;
};

// Characteristic maps phi(t) = t - eps l(t), psi(t) = t + eps l(t),
// omega = phi o psi^{-1}, their inverses, iterates and reflection counters.
class CharMaps {
 public:
  explicit CharMaps(const Front& front) : f_(&front) {}

  const Front& front() const { return *f_; }
  double epsilon() const { return f_->epsilon(); }

  double phi(double t) const;
  double psi(double t) const;
  double phi_inv(double s) const;
  double psi_inv(double s) const;

  // Domain [eps l0, psi(end)].
  double omega(double s) const;
  // Domain [-eps l0, phi(end)].
  double omega_inv(double s) const;
  // (1 - eps l') / (1 + eps l') at psi^{-1}(s).
  double omega_dot(double s) const;

  double omega_iterate(int j, double s) const;
  // d/ds of the j-th iterate, product of omega_dot along the orbit.
  double omega_iterate_dot(int j, double s) const;

  // Minimal m with omega^m(t) in [0, omega^{-1}(0)).
  int count_m(double t) const;
  // Minimal n with omega^n(s) in [-eps l0, eps l0).
  int count_n(double s) const;

  static constexpr int kMaxReflections = 1000000;

 private:
  std::size_t psi_segment(double s) const;
  std::size_t phi_segment(double s) const;

  const Front* f_;
};

}  // namespace debond
