#include "debond/front.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace debond {

namespace {

constexpr double kSlack = 1e-12;

Error out_of_domain(const char* what, double arg) {
  return Error(ErrorKind::range, std::string(what) + " argument out of domain: " + std::to_string(arg));
}

}  // namespace

Front::Front(double epsilon, double ell0, double ds) : eps_(epsilon), ds_(ds) {
  if (!(epsilon > 0) || !(ell0 > 0) || !(ds > 0))
    throw Error(ErrorKind::validation, "front needs positive epsilon, ell0 and ds");
  ell_.push_back(ell0);
  phi_.push_back(-eps_ * ell0);
  psi_.push_back(eps_ * ell0);
}

Front Front::from_values(double epsilon, double ds, const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorKind::validation, "front needs at least one value");
  Front f(epsilon, values.front(), ds);
  for (std::size_t k = 1; k < values.size(); ++k) f.push(values[k]);
  return f;
}

void Front::push(double ell) {
  double prev = ell_.back();
  double rate = (ell - prev) / ds_;
  if (!(rate >= 0))
    throw Error(ErrorKind::invariant_violation, "front must be nondecreasing");
  if (!(eps_ * rate < 1.0))
    throw Error(ErrorKind::invariant_violation, "front speed reached 1/epsilon; reduce ds");
  double t = knot_time(ell_.size());
  ell_.push_back(ell);
  phi_.push_back(t - eps_ * ell);
  psi_.push_back(t + eps_ * ell);
}

void Front::truncate(std::size_t knots) {
  knots = std::max<std::size_t>(knots, 1);
  if (knots < ell_.size()) {
    ell_.resize(knots);
    phi_.resize(knots);
    psi_.resize(knots);
  }
}

std::size_t Front::segment_of(double t) const {
  if (ell_.size() < 2 || t <= 0) return 0;
  double k = std::ceil(t / ds_) - 1.0;
  auto seg = static_cast<std::size_t>(std::max(0.0, k));
  return std::min(seg, ell_.size() - 2);
}

double Front::operator()(double t) const {
  double end = end_time();
  if (t < -kSlack * std::max(1.0, end) || t > end + kSlack * std::max(1.0, end))
    throw Error(ErrorKind::insufficient_front, "front queried at t=" + std::to_string(t) +
                                                   " beyond known horizon " + std::to_string(end));
  if (ell_.size() < 2) return ell_.front();
  double u = t / ds_;
  auto k = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(ell_.size() - 2)));
  double a = u - static_cast<double>(k);
  return ell_[k] + a * (ell_[k + 1] - ell_[k]);
}

double Front::slope(double t) const {
  if (ell_.size() < 2) return 0.0;
  std::size_t k = segment_of(t);
  return (ell_[k + 1] - ell_[k]) / ds_;
}

// ---------------------------------------------------------------------------

double CharMaps::phi(double t) const { return t - epsilon() * (*f_)(t); }
double CharMaps::psi(double t) const { return t + epsilon() * (*f_)(t); }

std::size_t CharMaps::phi_segment(double s) const {
  const auto& p = f_->phi_knots();
  auto it = std::lower_bound(p.begin(), p.end(), s);
  std::size_t i = static_cast<std::size_t>(it - p.begin());
  std::size_t seg = i == 0 ? 0 : i - 1;
  return std::min(seg, p.size() - 2);
}

std::size_t CharMaps::psi_segment(double s) const {
  const auto& p = f_->psi_knots();
  auto it = std::lower_bound(p.begin(), p.end(), s);
  std::size_t i = static_cast<std::size_t>(it - p.begin());
  std::size_t seg = i == 0 ? 0 : i - 1;
  return std::min(seg, p.size() - 2);
}

double CharMaps::phi_inv(double s) const {
  const auto& p = f_->phi_knots();
  double tol = kSlack * std::max(1.0, std::abs(p.back()));
  if (s < p.front() - tol) throw out_of_domain("phi_inv", s);
  if (s > p.back() + tol)
    throw Error(ErrorKind::insufficient_front, "phi_inv needs the front beyond its horizon");
  if (p.size() < 2) return 0.0;
  std::size_t k = phi_segment(s);
  double a = (s - p[k]) / (p[k + 1] - p[k]);
  return f_->knot_time(k) + a * f_->ds();
}

double CharMaps::psi_inv(double s) const {
  const auto& p = f_->psi_knots();
  double tol = kSlack * std::max(1.0, std::abs(p.back()));
  if (s < p.front() - tol) throw out_of_domain("psi_inv", s);
  if (s > p.back() + tol)
    throw Error(ErrorKind::insufficient_front, "psi_inv needs the front beyond its horizon");
  if (p.size() < 2) return 0.0;
  std::size_t k = psi_segment(s);
  double a = (s - p[k]) / (p[k + 1] - p[k]);
  return f_->knot_time(k) + a * f_->ds();
}

double CharMaps::omega(double s) const { return phi(psi_inv(s)); }

double CharMaps::omega_inv(double s) const { return psi(phi_inv(s)); }

double CharMaps::omega_dot(double s) const {
  const auto& p = f_->psi_knots();
  if (s < p.front() - kSlack) throw out_of_domain("omega_dot", s);
  if (p.size() < 2) return 1.0;
  std::size_t k = psi_segment(s);
  double c = (f_->knot_value(k + 1) - f_->knot_value(k)) / f_->ds();
  double e = epsilon() * c;
  return (1.0 - e) / (1.0 + e);
}

double CharMaps::omega_iterate(int j, double s) const {
  double lo = epsilon() * f_->ell0();
  for (int i = 0; i < j; ++i) {
    if (s < lo - kSlack)
      throw Error(ErrorKind::iteration_depth, "omega iterate left its domain at j=" + std::to_string(i));
    s = omega(s);
  }
  return s;
}

double CharMaps::omega_iterate_dot(int j, double s) const {
  double d = 1.0;
  double lo = epsilon() * f_->ell0();
  for (int i = 0; i < j; ++i) {
    if (s < lo - kSlack)
      throw Error(ErrorKind::iteration_depth, "omega iterate left its domain at j=" + std::to_string(i));
    d *= omega_dot(s);
    s = omega(s);
  }
  return d;
}

int CharMaps::count_m(double t) const {
  if (t < 0) throw out_of_domain("count_m", t);
  double top = omega_inv(0.0);
  int m = 0;
  while (t >= top) {
    t = omega(t);
    if (++m > kMaxReflections) throw Error(ErrorKind::iteration_depth, "reflection count exceeded cap");
  }
  return m;
}

int CharMaps::count_n(double s) const {
  double lo = epsilon() * f_->ell0();
  if (s < -lo * (1 + kSlack)) throw out_of_domain("count_n", s);
  int n = 0;
  while (s >= lo) {
    s = omega(s);
    if (++n > kMaxReflections) throw Error(ErrorKind::iteration_depth, "reflection count exceeded cap");
  }
  return n;
}

}  // namespace debond
