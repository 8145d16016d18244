#pragma once

#include <vector>

#include "debond/model.hpp"

namespace debond {

// lambda(t) = phi_kappa^{-1}(max{(w^2)_*(t) / 2, phi_kappa(start)}) on a grid.
struct QuasistaticEvolution {
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> w;
  double start = 0.0;
  Toughness toughness;
  Loading loading;
};

// Requires K3 and KW (checked from `start`) and start >= l0.
QuasistaticEvolution quasistatic_front(const Toughness& tough, const Loading& w, const std::vector<double>& grid,
                                       double start);
std::vector<double> uniform_grid(double t_end, double step);

// w(t) (1 - x / lambda(t)) on [0, lambda(t)], 0 beyond; lambda interpolated linearly in t.
double quasistatic_displacement(const QuasistaticEvolution& ev, double t, double x);

struct QuasistaticGriffith {
  double max_negative_slope = 0.0;  // (-lambda')_+
  double max_stability = 0.0;       // (w^2 / (2 lambda^2) - kappa(lambda))_+
  double max_complementarity = 0.0;  // |lambda' (w^2 / (2 lambda^2) - kappa(lambda))|
  std::vector<double> stability;     // per node, signed
  std::vector<double> complementarity;
};
// lambda' by backward differences, zero at the first node.
QuasistaticGriffith verify_quasistatic_griffith(const QuasistaticEvolution& ev);

struct GlobalStability {
  double min_gap = 0.0;  // min over samples of E_t(lambda_hat) - E_t(lambda(t))
  std::size_t samples = 0;
};
// E_t(x) = w(t)^2 / (2x) + int_{l0}^{x} kappa, sampled for x in [lambda(t), x_max].
GlobalStability verify_global_stability(const QuasistaticEvolution& ev, std::size_t time_samples,
                                        std::size_t length_samples);

// w^2/(2 lambda) + int_{l0}^{lambda} kappa - int_0^t w' w / lambda - (same at t_0), trapezoids.
std::vector<double> verify_energy_balance_qs(const QuasistaticEvolution& ev);

// Nodes k whose increment lambda_k - lambda_{k-1} exceeds ten times the local
// Lipschitz estimate, the larger neighbouring increment (with a floor).
std::vector<std::size_t> detect_jumps(const QuasistaticEvolution& ev, double floor = 1e-12);

}  // namespace debond
