#include "debond/quasistatic.hpp"

#include <algorithm>
#include <cmath>

namespace debond {

std::vector<double> uniform_grid(double t_end, double step) {
  auto n = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = std::min(static_cast<double>(k) * step, t_end);
  return g;
}

QuasistaticEvolution quasistatic_front(const Toughness& tough, const Loading& w, const std::vector<double>& grid,
                                       double start) {
  if (grid.empty() || grid.front() != 0.0)
    throw Error(ErrorKind::precondition, "time grid must start at 0");
  if (start < tough.ell0())
    throw Error(ErrorKind::precondition, "start length below l0");
  double step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  ConditionFlags f = tough.conditions_from(w, grid.back(), step, start);
  if (!f.K3) throw Error(ErrorKind::precondition, "condition K3 fails: phi_kappa' > 0 not satisfied");
  if (!f.KW) throw Error(ErrorKind::precondition, "condition KW fails: phi_kappa stays below max w^2 / 2");
  QuasistaticEvolution ev;
  ev.t = grid;
  ev.start = start;
  ev.toughness = tough;
  ev.loading = w;
  std::vector<double> rm = running_max_w_squared(w, grid);
  const double floor = tough.phi(start);
  ev.lambda.resize(grid.size());
  ev.w.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ev.w[k] = w(grid[k]);
    double y = 0.5 * rm[k];
    ev.lambda[k] = y > floor ? tough.phi_inv(y) : start;
  }
  return ev;
}

double quasistatic_displacement(const QuasistaticEvolution& ev, double t, double x) {
  if (t < ev.t.front() || t > ev.t.back()) throw Error(ErrorKind::range, "time outside the evolution grid");
  auto it = std::upper_bound(ev.t.begin(), ev.t.end(), t);
  std::size_t k = it == ev.t.end() ? ev.t.size() - 1 : static_cast<std::size_t>(it - ev.t.begin());
  double lam = ev.lambda[k];
  if (k > 0 && ev.t[k] > t) {
    double a = (t - ev.t[k - 1]) / (ev.t[k] - ev.t[k - 1]);
    lam = ev.lambda[k - 1] + a * (ev.lambda[k] - ev.lambda[k - 1]);
  }
  if (x < 0 || x > lam) return 0.0;
  return ev.loading(t) * (1.0 - x / lam);
}

QuasistaticGriffith verify_quasistatic_griffith(const QuasistaticEvolution& ev) {
  QuasistaticGriffith r;
  for (std::size_t k = 0; k < ev.t.size(); ++k) {
    double lam = ev.lambda[k];
    double rate = k == 0 ? 0.0 : (lam - ev.lambda[k - 1]) / (ev.t[k] - ev.t[k - 1]);
    double slack = 0.5 * ev.w[k] * ev.w[k] / (lam * lam) - ev.toughness(lam);
    r.stability.push_back(slack);
    r.complementarity.push_back(rate * slack);
    r.max_negative_slope = std::max(r.max_negative_slope, -rate);
    r.max_stability = std::max(r.max_stability, slack);
    r.max_complementarity = std::max(r.max_complementarity, std::abs(rate * slack));
  }
  return r;
}

GlobalStability verify_global_stability(const QuasistaticEvolution& ev, std::size_t time_samples,
                                        std::size_t length_samples) {
  const auto& tough = ev.toughness;
  double step = ev.t.size() > 1 ? ev.t[1] - ev.t[0] : 0.0;
  if (!tough.conditions(ev.loading, ev.t.back(), step).K1)
    throw Error(ErrorKind::precondition, "condition K1 fails: phi_kappa is not nondecreasing");
  GlobalStability g;
  g.min_gap = INFINITY;
  const double l0 = tough.ell0();
  const std::size_t nt = std::max<std::size_t>(time_samples, 1);
  const std::size_t nl = std::max<std::size_t>(length_samples, 2);
  for (std::size_t a = 0; a < nt; ++a) {
    std::size_t k = nt == 1 ? 0 : a * (ev.t.size() - 1) / (nt - 1);
    double lam = ev.lambda[k];
    double w2 = ev.w[k] * ev.w[k];
    double base = 0.5 * w2 / lam + tough.integral(l0, lam);
    for (std::size_t b = 0; b < nl; ++b) {
      double x = lam + (tough.x_max() - lam) * static_cast<double>(b) / static_cast<double>(nl - 1);
      double e = 0.5 * w2 / x + tough.integral(l0, x);
      g.min_gap = std::min(g.min_gap, e - base);
      ++g.samples;
    }
  }
  return g;
}

std::vector<double> verify_energy_balance_qs(const QuasistaticEvolution& ev) {
  const auto& tough = ev.toughness;
  const double l0 = tough.ell0();
  std::vector<double> res(ev.t.size());
  auto energy = [&](std::size_t k) { return 0.5 * ev.w[k] * ev.w[k] / ev.lambda[k] + tough.integral(l0, ev.lambda[k]); };
  auto power = [&](std::size_t k) { return ev.loading.derivative(ev.t[k]) * ev.w[k] / ev.lambda[k]; };
  const double e0 = energy(0);
  double work = 0.0;
  for (std::size_t k = 0; k < ev.t.size(); ++k) {
    if (k > 0) work += 0.5 * (ev.t[k] - ev.t[k - 1]) * (power(k - 1) + power(k));
    res[k] = energy(k) - work - e0;
  }
  return res;
}

std::vector<std::size_t> detect_jumps(const QuasistaticEvolution& ev, double floor) {
  std::vector<std::size_t> out;
  const std::size_t n = ev.lambda.size();
  for (std::size_t k = 1; k < n; ++k) {
    double inc = ev.lambda[k] - ev.lambda[k - 1];
    double before = k >= 2 ? std::abs(ev.lambda[k - 1] - ev.lambda[k - 2]) : 0.0;
    double after = k + 1 < n ? std::abs(ev.lambda[k + 1] - ev.lambda[k]) : 0.0;
    double lip = std::max({before, after, floor});
    if (inc > 10.0 * lip) out.push_back(k);
  }
  return out;
}

}  // namespace debond
