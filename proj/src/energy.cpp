#include "debond/energy.hpp"

#include <algorithm>
#include <cmath>

namespace debond {

namespace {

// Trapezoids over the stored nodes of row k, closed by the cell up to the front.
template <class F>
double row_integral(const WaveField& field, std::size_t k, F&& value, double at_front) {
  const std::size_t n = field.u[k].size();
  const double dx = field.dx;
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) total += 0.5 * dx * (value(j) + value(j + 1));
  double gap = field.ell[k] - static_cast<double>(n - 1) * dx;
  if (gap > 0) total += 0.5 * gap * (value(n - 1) + at_front);
  return total;
}

// Integral over [0, l0] of weight(x) q(x), q linear between nodes; three-point
// Gauss per cell, exact for the polynomial cutoff times a linear q.
template <class Wt, class Q>
double cutoff_integral(const WaveField& field, std::size_t k, double ell0, Wt&& weight, Q&& q) {
  static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const std::size_t n = field.u[k].size();
  const double dx = field.dx;
  double total = 0.0;
  for (std::size_t j = 0; j < n && static_cast<double>(j) * dx < ell0; ++j) {
    double a = static_cast<double>(j) * dx;
    double b = std::min(a + dx, ell0);
    double qa = q(j);
    double qb = j + 1 < n ? q(j + 1) : qa;
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int g = 0; g < 3; ++g) {
      double x = mid + half * gx[g];
      total += half * gw[g] * weight(x) * (qa + (qb - qa) * (x - a) / dx);
    }
  }
  return total;
}

}  // namespace

EnergySeries compute_energies(const WaveField& field, const Loading& w, double nu) {
  EnergySeries s;
  const double e2 = field.epsilon * field.epsilon;
  const std::size_t N = field.steps();
  double A = 0.0, W = 0.0, a_prev = 0.0, w_prev = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const auto& ut = field.ut[k];
    const auto& ux = field.ux[k];
    double utf = field.ut_front[k], uxf = field.ux_front[k];
    double kin = 0.5 * e2 * row_integral(field, k, [&](std::size_t j) { return ut[j] * ut[j]; }, utf * utf);
    double pot = 0.5 * row_integral(field, k, [&](std::size_t j) { return ux[j] * ux[j]; }, uxf * uxf);
    double a_rate = nu * field.epsilon * 2.0 * kin / e2;
    double w_rate = w.derivative(field.t[k]) * field.ux_left[k];
    if (k > 0) {
      double h = field.t[k] - field.t[k - 1];
      A += 0.5 * h * (a_prev + a_rate);
      W += 0.5 * h * (w_prev + w_rate);
    }
    a_prev = a_rate;
    w_prev = w_rate;
    double wt = w(field.t[k]);
    double ell = field.ell[k];
    double E = kin + pot;
    // The cross term of (u_x - r_x)^2 integrates exactly to -r_x (u(0) - u(l)).
    double rx = -wt / ell;
    double direct = kin + pot + rx * field.u[k][0] + 0.5 * rx * rx * ell;
    s.t.push_back(field.t[k]);
    s.ell.push_back(ell);
    s.E.push_back(E);
    s.kinetic.push_back(kin);
    s.A.push_back(A);
    s.W.push_back(W);
    s.Etilde.push_back(E - 0.5 * wt * wt / ell);
    s.Etilde_direct.push_back(direct);
  }
  return s;
}

BalanceResidual balance_residual(const EnergySeries& s, const Toughness& tough) {
  BalanceResidual r;
  if (s.t.empty()) return r;
  const double E0 = s.E.front();
  const double ell0 = s.ell.front();
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    double v = s.E[k] + s.A[k] + tough.integral(ell0, s.ell[k]) + s.W[k] - E0;
    r.raw.push_back(v);
    r.relative.push_back(v / (E0 + 1.0));
    r.max_abs = std::max(r.max_abs, std::abs(v));
    r.max_relative = std::max(r.max_relative, std::abs(v) / (E0 + 1.0));
  }
  return r;
}

GriffithResiduals griffith_residuals(const Front& front, const std::vector<double>& G0, const Toughness& tough) {
  GriffithResiduals g;
  const std::size_t steps = std::min(G0.size(), front.knots() - 1);
  if (steps == 0) return g;
  const double eps = front.epsilon();
  g.min_slope = INFINITY;
  g.max_slope = -INFINITY;
  for (std::size_t k = 0; k < steps; ++k) {
    double rate = (front.knot_value(k + 1) - front.knot_value(k)) / front.ds();
    double G = G0[k] * (1.0 - eps * rate) / (1.0 + eps * rate);
    double kap = tough(front.knot_value(k));
    g.min_slope = std::min(g.min_slope, rate);
    g.max_slope = std::max(g.max_slope, rate);
    g.max_stability = std::max(g.max_stability, G - kap);
    double c = std::abs(rate * (G - kap));
    g.max_complementarity = std::max(g.max_complementarity, c);
    g.max_complementarity_scaled = std::max(g.max_complementarity_scaled, c / kap);
  }
  return g;
}

DecayConstants decay_constants(double nu, double L_T) {
  DecayConstants c;
  c.mu0 = L_T / M_PI;
  c.mu1 = nu * c.mu0 * c.mu0;
  c.m = 0.5 * std::min({1.0 / (2.0 * c.mu0), nu / 2.0, 1.0 / (c.mu0 + c.mu1)});
  return c;
}

DecayReport decay_envelope_check(const EnergySeries& s, const WaveField& field, const Loading& w, double nu) {
  DecayReport r;
  if (!(nu > 0.0) || s.t.empty()) return r;
  r.applicable = true;
  r.L_T = *std::max_element(s.ell.begin(), s.ell.end());
  r.constants = decay_constants(nu, r.L_T);
  const double rate = r.constants.m / field.epsilon;
  auto drive = [&](std::size_t k) {
    double dw = w.derivative(s.t[k]);
    double ux0 = field.ux_left[k];
    return field.ell_dot[k] + dw * dw + ux0 * ux0 + 1.0;
  };
  double I = 0.0;
  double C = 0.0;
  for (std::size_t k = 1; k < s.t.size(); ++k) {
    double h = s.t[k] - s.t[k - 1];
    double decay = std::exp(-rate * h);
    I = decay * I + 0.5 * h * (decay * drive(k - 1) + drive(k));
    double excess = s.Etilde[k] - 4.0 * s.Etilde.front() * std::exp(-rate * s.t[k]);
    if (excess > 0 && I > 0) C = std::max(C, excess / I);
  }
  r.empirical_C_T = C;
  return r;
}

double cutoff(double x, double ell0) {
  if (x <= 0) return 1.0;
  if (x >= ell0) return 0.0;
  double y = x / ell0;
  return 1.0 - y * y * y * (10.0 - 15.0 * y + 6.0 * y * y);
}

double cutoff_derivative(double x, double ell0) {
  if (x <= 0 || x >= ell0) return 0.0;
  double y = x / ell0;
  return -30.0 * y * y * (1.0 - y) * (1.0 - y) / ell0;
}

BoundaryWorkReport boundary_work_identity_check(const WaveField& field, const Problem& p) {
  const double ell0 = p.params.ell0;
  const double eps = field.epsilon;
  const double nu = p.params.nu;
  const double e2 = eps * eps;
  const std::size_t N = field.steps();
  for (std::size_t k = 0; k < N; ++k) {
    double covered = static_cast<double>(field.u[k].size() - 1) * field.dx;
    if (field.u[k].empty() || covered < std::min(field.ell[k], ell0) - field.dx - 1e-9)
      throw Error(ErrorKind::missing_data, "field rows do not cover [0, l0]");
  }
  auto h = [&](double x) { return cutoff(x, ell0); };
  auto dh = [&](double x) { return cutoff_derivative(x, ell0); };
  auto cross = [&](std::size_t k) {
    return cutoff_integral(field, k, ell0, h, [&](std::size_t j) { return eps * field.ut[k][j] * field.ux[k][j]; });
  };
  auto slope_term = [&](std::size_t k) {
    return cutoff_integral(field, k, ell0, dh, [&](std::size_t j) {
      return e2 * field.ut[k][j] * field.ut[k][j] + field.ux[k][j] * field.ux[k][j];
    });
  };
  auto left = [&](std::size_t k) {
    double dw = p.loading.derivative(field.t[k]);
    return 0.5 * (e2 * dw * dw + field.ux_left[k] * field.ux_left[k]);
  };
  // Initial cross term from the data, on the same nodes.
  double initial = cutoff_integral(field, 0, ell0, h, [&](std::size_t j) {
    double x = static_cast<double>(j) * field.dx;
    return eps * p.init.u1(x) * p.init.du0(x);
  });

  BoundaryWorkReport r;
  double L = 0.0, S = 0.0, X = 0.0;
  double l_prev = left(0), s_prev = slope_term(0), x_prev = cross(0);
  for (std::size_t k = 0; k < N; ++k) {
    double l_k = left(k), s_k = slope_term(k), x_k = cross(k);
    if (k > 0) {
      double h = field.t[k] - field.t[k - 1];
      L += 0.5 * h * (l_prev + l_k);
      S += 0.5 * h * (s_prev + s_k);
      X += 0.5 * h * (x_prev + x_k);
    }
    l_prev = l_k;
    s_prev = s_k;
    x_prev = x_k;
    double rhs = -0.5 * S - nu * X - eps * (x_k - initial);
    r.lhs.push_back(L);
    r.rhs.push_back(rhs);
    r.max_residual = std::max(r.max_residual, std::abs(L - rhs));
  }
  return r;
}

}  // namespace debond
