#pragma once

#include <vector>

#include "debond/dynamic_solver.hpp"
#include "debond/model.hpp"

namespace debond {

// Energies on the rows of a field: x-integrals by trapezoids up to the front
// (the last cell closed with the front traces), t-integrals cumulative.
struct EnergySeries {
  std::vector<double> t;
  std::vector<double> ell;
  std::vector<double> E;        // (1/2) int eps^2 u_t^2 + u_x^2
  std::vector<double> kinetic;  // (1/2) int eps^2 u_t^2
  std::vector<double> A;        // nu eps int int u_t^2
  std::vector<double> W;        // int w' u_x(., 0)
  std::vector<double> Etilde;   // E - w^2 / (2 ell)
  std::vector<double> Etilde_direct;  // (1/2) int eps^2 u_t^2 + (u_x - r_x)^2
};

EnergySeries compute_energies(const WaveField& field, const Loading& w, double nu);

struct BalanceResidual {
  std::vector<double> raw;       // E + A + int_{l0}^{l} kappa + W - E(0)
  std::vector<double> relative;  // raw / (E(0) + 1)
  double max_abs = 0.0;
  double max_relative = 0.0;
};
BalanceResidual balance_residual(const EnergySeries& series, const Toughness& tough);

// Griffith conditions on each Euler step from knot k, with the release rate at
// the actual speed, G = G0 (1 - eps l') / (1 + eps l'), l' the slope leaving k
// and G0 the sample that drove the step.
struct GriffithResiduals {
  double min_slope = 0.0;
  double max_slope = 0.0;
  double max_stability = 0.0;        // (G - kappa)_+
  double max_complementarity = 0.0;  // |l' (G - kappa)|
  double max_complementarity_scaled = 0.0;  // same, divided by kappa(l) at each knot
};
GriffithResiduals griffith_residuals(const Front& front, const std::vector<double>& G0, const Toughness& tough);

struct DecayConstants {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double m = 0.0;
};
DecayConstants decay_constants(double nu, double L_T);

struct DecayReport {
  bool applicable = false;
  double L_T = 0.0;
  DecayConstants constants;
  // Smallest C with Etilde(t) <= 4 Etilde(0) e^{-m t/eps} + C I(t) on all rows.
  double empirical_C_T = 0.0;
};
DecayReport decay_envelope_check(const EnergySeries& series, const WaveField& field, const Loading& w,
                                 double nu);

// Cutoff of the boundary-work identity: 1 - 10y^3 + 15y^4 - 6y^5, y = x / l0,
// and 0 past l0.
double cutoff(double x, double ell0);
double cutoff_derivative(double x, double ell0);

struct BoundaryWorkReport {
  std::vector<double> lhs;
  std::vector<double> rhs;
  double max_residual = 0.0;
};
// Both sides of the boundary-work identity on every row. Throws missing_data
// unless every row covers [0, l0].
BoundaryWorkReport boundary_work_identity_check(const WaveField& field, const Problem& problem);

}  // namespace debond
