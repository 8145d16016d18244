#pragma once

#include <vector>

#include "debond/front.hpp"
#include "debond/model.hpp"

namespace debond {

// Auxiliary function f of the representation formula on (-eps l0, +inf).
// The initial window (-eps l0, eps l0] comes from the data; beyond it the
// reflection rule f(psi(s)) = eps w(psi(s)) + f(phi(s)) is unrolled exactly
// down to the initial window, so no interpolation error enters.
class CharFunction {
 public:
  CharFunction(double epsilon, double ell0, double ds, const Loading& w, const InitialData& init,
               const CharMaps& maps);

  // Initial-window formulas, valid on [-eps l0, eps l0].
  double seed(double s) const;
  double seed_derivative(double s) const;

  double value(double s) const;
  double derivative(double s) const;

  // w(psi(s)) - f(psi(s))/eps + f(phi(s))/eps for s > 0.
  double reflection_residual(double s) const;

  // Cached samples on the grid s_k = k ds, k >= k_min.
  long grid_min_index() const { return k_min_; }
  double grid_value(long k);
  double grid_derivative(long k);
  // Drops cached samples at s > limit (the front past that point may change).
  void invalidate_after(double limit);
  // Fills the cache up to s_max and returns the samples (s, f, f').
  struct Samples {
    std::vector<double> s, f, df;
  };
  Samples sample(double s_max) const;

 private:
  double eps_;
  double ell0_;
  double ds_;
  const Loading* w_;
  const InitialData* init_;
  const CharMaps* maps_;
  long k_min_;
  std::vector<double> cache_;
  std::vector<double> dcache_;
};

}  // namespace debond
