#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "debond/errors.hpp"

namespace debond {

// Piecewise-linear interpolant on strictly increasing nodes. Outside the node
// range it is extended by constants.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  // Right-continuous slope; the last node takes the slope of the last cell.
  double slope(double x) const;
  // Exact integral of the interpolant over [x.front(), b].
  double integral_to(double b) const;

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t cell(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> cumulative_;
};

struct SimParams {
  double epsilon = 0.1;
  double nu = 0.0;
  double ell0 = 1.0;
  double t_end = 1.0;
  double ds = 1e-3;
  double x_max = 64.0;  // toughness domain cap, 64 * ell0 unless configured

  void validate() const;
};

struct ConditionFlags {
  bool K0 = false;
  bool K1 = false;
  bool K2 = false;
  bool K3 = false;
  bool KW = false;
};

class Loading;

class Toughness {
 public:
  enum class Kind { constant, affine, power, sampled };

  static Toughness constant(double kappa0);
  static Toughness affine(double a, double b);            // a + b x
  static Toughness power(double c, double p);             // c x^p
  static Toughness sampled(std::vector<double> x, std::vector<double> kappa);

  // Fixes the admissible domain [ell0, x_max] and checks positivity on it.
  void bind_domain(double ell0, double x_max);

  Kind kind() const { return kind_; }
  double ell0() const { return ell0_; }
  double x_max() const { return x_max_; }

  double operator()(double x) const;
  // Integral of kappa over [a, b], both inside the domain.
  double integral(double a, double b) const;
  double phi(double x) const;
  double dphi(double x) const;
  // Bisection on [ell0, x_max]; requires K2.
  double phi_inv(double y) const;

  ConditionFlags conditions(const Loading& w, double horizon, double grid_step) const;
  // Same as conditions() but the second half of KW is checked at `start`.
  ConditionFlags conditions_from(const Loading& w, double horizon, double grid_step,
                                 double start) const;

  nlohmann::json to_json() const;

 private:
  double raw(double x) const;
  double raw_antiderivative(double x) const;
  bool strictly_increasing_phi() const;

  Kind kind_ = Kind::constant;
  double a_ = 1.0;
  double b_ = 0.0;
  PiecewiseLinear table_;
  double ell0_ = 0.0;
  double x_max_ = 0.0;
  bool phi_increasing_checked_ = false;
  bool phi_increasing_ = false;
};

class Loading {
 public:
  enum class Kind { constant, ramp, polynomial, sinusoid, sampled };

  static Loading constant(double value);
  static Loading ramp(double from, double to, double t0, double t1);
  static Loading polynomial(std::vector<double> coeffs);
  static Loading sinusoid(double offset, double amplitude, double omega, double phase);
  static Loading sampled(std::vector<double> t, std::vector<double> w);

  Kind kind() const { return kind_; }
  double operator()(double t) const;
  double derivative(double t) const;
  // Largest w^2 on [0, horizon], sampled on the given step plus kink points.
  double max_square(double horizon, double step) const;
  // Copy frozen at the value w(0).
  Loading frozen() const { return constant((*this)(0.0)); }

  nlohmann::json to_json() const;

 private:
  Kind kind_ = Kind::constant;
  std::vector<double> c_;
  PiecewiseLinear table_;
};

class InitialData {
 public:
  InitialData() = default;
  InitialData(PiecewiseLinear u0, PiecewiseLinear u1, double ell0);

  // u0(x) = w0 (1 - x / ell0), u1 = 0.
  static InitialData equilibrium(double w0, double ell0);

  double u0(double x) const { return u0_(x); }
  double du0(double x) const { return u0_.slope(x); }
  double u1(double x) const { return u1_(x); }
  // Exact integral of u1 over [0, y].
  double int_u1(double y) const { return u1_.integral_to(y); }
  double ell0() const { return ell0_; }

  // Throws a validation error unless u0(0) = w(0) and u0(ell0) = 0 exactly.
  void check_compatibility(const Loading& w) const;
  // Flags for the first-order compatibility u1(0) = w'(0) used for extra regularity.
  bool first_order_compatible(const Loading& w, double tol = 1e-12) const;

  const PiecewiseLinear& u0_table() const { return u0_; }
  const PiecewiseLinear& u1_table() const { return u1_; }

 private:
  PiecewiseLinear u0_;
  PiecewiseLinear u1_;
  double ell0_ = 1.0;
};

struct Problem {
  SimParams params;
  Toughness toughness;
  Loading loading;
  InitialData init;
  nlohmann::json source;  // validated input document, kept for reports

  // Same problem with a different epsilon and grid step.
  Problem with_epsilon(double epsilon, double ds) const;
};

// Parses and validates a problem document. Errors carry JSON-pointer paths.
Problem parse_problem(const nlohmann::json& doc);
Problem load_problem_file(const std::string& path);

// (w^2)_* sampled on an ascending grid starting at 0.
std::vector<double> running_max_w_squared(const Loading& w, const std::vector<double>& grid);

}  // namespace debond
