#include "debond/char_function.hpp"

#include <cmath>
#include <string>

namespace debond {

CharFunction::CharFunction(double epsilon, double ell0, double ds, const Loading& w, const InitialData& init,
                           const CharMaps& maps)
    : eps_(epsilon), ell0_(ell0), ds_(ds), w_(&w), init_(&init), maps_(&maps) {
  k_min_ = static_cast<long>(std::ceil(-eps_ * ell0_ / ds_ - 1e-12));
}

double CharFunction::seed(double s) const {
  const double span = eps_ * ell0_;
  if (s < -span * (1 + 1e-12) || s > span * (1 + 1e-12))
    throw Error(ErrorKind::range, "initial-window formula used outside [-eps l0, eps l0]");
  const double w0 = (*w_)(0.0);
  const double u00 = init_->u0(0.0);
  if (s > 0) {
    double y = std::min(s / eps_, ell0_);
    return eps_ * (*w_)(s) - 0.5 * eps_ * init_->u0(y) - 0.5 * eps_ * eps_ * init_->int_u1(y) - eps_ * w0 +
           0.5 * eps_ * u00;
  }
  double y = std::min(-s / eps_, ell0_);
  return 0.5 * eps_ * init_->u0(y) - 0.5 * eps_ * eps_ * init_->int_u1(y) - 0.5 * eps_ * u00;
}

double CharFunction::seed_derivative(double s) const {
  const double span = eps_ * ell0_;
  if (s < -span * (1 + 1e-12) || s > span * (1 + 1e-12))
    throw Error(ErrorKind::range, "initial-window formula used outside [-eps l0, eps l0]");
  if (s > 0) {
    double y = std::min(s / eps_, ell0_);
    return eps_ * w_->derivative(s) - 0.5 * init_->du0(y) - 0.5 * eps_ * init_->u1(y);
  }
  double y = std::min(-s / eps_, ell0_);
  return -0.5 * init_->du0(y) + 0.5 * eps_ * init_->u1(y);
}

double CharFunction::value(double s) const {
  const double span = eps_ * ell0_;
  double acc = 0.0;
  int depth = 0;
  while (s > span) {
    acc += eps_ * (*w_)(s);
    s = maps_->omega(s);
    if (++depth > CharMaps::kMaxReflections)
      throw Error(ErrorKind::iteration_depth, "reflection recursion exceeded cap");
  }
  return acc + seed(s);
}

double CharFunction::derivative(double s) const {
  const double span = eps_ * ell0_;
  double acc = 0.0, mult = 1.0;
  int depth = 0;
  while (s > span) {
    acc += mult * eps_ * w_->derivative(s);
    mult *= maps_->omega_dot(s);
    s = maps_->omega(s);
    if (++depth > CharMaps::kMaxReflections)
      throw Error(ErrorKind::iteration_depth, "reflection recursion exceeded cap");
  }
  return acc + mult * seed_derivative(s);
}

double CharFunction::reflection_residual(double s) const {
  double up = maps_->psi(s);
  double down = maps_->phi(s);
  return (*w_)(up) - value(up) / eps_ + value(down) / eps_;
}

double CharFunction::grid_value(long k) {
  if (k < k_min_) throw Error(ErrorKind::range, "f requested below -eps l0");
  auto idx = static_cast<std::size_t>(k - k_min_);
  while (cache_.size() <= idx) {
    long kk = k_min_ + static_cast<long>(cache_.size());
    double s = static_cast<double>(kk) * ds_;
    cache_.push_back(value(std::max(s, -eps_ * ell0_)));
  }
  return cache_[idx];
}

double CharFunction::grid_derivative(long k) {
  if (k < k_min_) throw Error(ErrorKind::range, "f' requested below -eps l0");
  auto idx = static_cast<std::size_t>(k - k_min_);
  while (dcache_.size() <= idx) {
    long kk = k_min_ + static_cast<long>(dcache_.size());
    double s = static_cast<double>(kk) * ds_;
    dcache_.push_back(derivative(std::max(s, -eps_ * ell0_)));
  }
  return dcache_[idx];
}

void CharFunction::invalidate_after(double limit) {
  long keep = static_cast<long>(std::floor(limit / ds_)) - k_min_ + 1;
  auto n = static_cast<std::size_t>(std::max(keep, 0L));
  if (n < cache_.size()) cache_.resize(n);
  if (n < dcache_.size()) dcache_.resize(n);
}

CharFunction::Samples CharFunction::sample(double s_max) const {
  Samples out;
  for (long k = k_min_;; ++k) {
    double s = std::max(static_cast<double>(k) * ds_, -eps_ * ell0_);
    if (s > s_max + 1e-12) break;
    out.s.push_back(s);
    out.f.push_back(value(s));
    out.df.push_back(derivative(s));
  }
  return out;
}

}  // namespace debond
