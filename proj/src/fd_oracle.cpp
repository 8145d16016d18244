#include "debond/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace debond {

namespace {

struct Level {
  std::vector<double> u;  // nodes with x_j < ell (x_0 = 0 always kept)
  std::size_t solid = 1;  // leading nodes set by the scheme, the rest interpolate to the front
  double ell = 0.0;
};

std::size_t count_inside(double ell, double dx) {
  auto n = static_cast<std::size_t>(std::ceil(ell / dx - 1e-12));
  return std::max<std::size_t>(n, 1);
}

// Last scheme node at distance at least dx/2 from the front.
std::size_t anchor(const Level& L, double dx) {
  std::size_t a = L.solid - 1;
  while (a > 0 && L.ell - static_cast<double>(a) * dx < 0.5 * dx) --a;
  return a;
}

double value(const Level& L, double dx, std::size_t j) {
  if (j < L.u.size()) return L.u[j];
  std::size_t a = anchor(L, dx);
  double xa = static_cast<double>(a) * dx;
  return L.u[a] * (L.ell - static_cast<double>(j) * dx) / (L.ell - xa);
}

double slope_at_front(const Level& L, double dx) {
  std::size_t a = anchor(L, dx);
  double xa = static_cast<double>(a) * dx;
  if (a == 0) return -L.u[0] / L.ell;
  double xb = xa - dx;
  double ya = L.u[a], yb = L.u[a - 1], at = L.ell;
  // Quadratic through (xb, yb), (xa, ya), (ell, 0), differentiated at ell.
  return yb * (at - xa) / ((xb - xa) * (xb - at)) + ya * (at - xb) / ((xa - xb) * (xa - at));
}

}  // namespace

FdResult fd_oracle_solve(const Problem& p, double courant) {
  if (!(courant > 0.0 && courant <= 1.0))
    throw Error(ErrorKind::configuration, "finite-difference oracle needs 0 < courant <= 1 (ds <= eps dx)");
  const double eps = p.params.epsilon;
  const double nu = p.params.nu;
  const double dt = p.params.ds;
  const double dx = dt / (eps * courant);
  const double r = courant * courant;
  const double c = nu * dt / (2 * eps);
  const auto steps = static_cast<std::size_t>(std::ceil(p.params.t_end / dt - 1e-9));

  FdResult out{Front(eps, p.params.ell0, dt), WaveField{}, {}};
  std::vector<Level> levels;
  Level L0;
  L0.ell = p.params.ell0;
  L0.u.resize(count_inside(L0.ell, dx));
  for (std::size_t j = 0; j < L0.u.size(); ++j) L0.u[j] = p.init.u0(static_cast<double>(j) * dx);
  L0.solid = L0.u.size();
  levels.push_back(L0);

  double rate_prev = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const Level& cur = levels[n];
    double ux = slope_at_front(cur, dx);
    double G = 0.5 * std::pow(1 + eps * rate_prev, 2) * ux * ux;
    out.G0.push_back(G);
    if (cur.ell > p.params.x_max) throw Error(ErrorKind::range, "front reached the toughness cap x_max");
    double rate = griffith_rate(G, p.toughness(cur.ell), eps);
    double ell_next = cur.ell + dt * rate;
    out.front.push(ell_next);
    rate_prev = rate;

    Level nxt;
    nxt.ell = ell_next;
    nxt.u.assign(count_inside(ell_next, dx), 0.0);
    nxt.u[0] = p.loading(static_cast<double>(n + 1) * dt);
    // Leapfrog only where the whole stencil lies on stored nodes.
    std::size_t solid = std::min(nxt.u.size(), cur.u.size() - 1);
    if (n > 0) solid = std::min(solid, levels[n - 1].u.size());
    solid = std::max<std::size_t>(solid, 1);
    for (std::size_t j = 1; j < solid; ++j) {
      double lap = cur.u[j + 1] - 2 * cur.u[j] + cur.u[j - 1];
      if (n == 0) {
        nxt.u[j] = cur.u[j] + dt * (1 - c) * p.init.u1(static_cast<double>(j) * dx) + 0.5 * r * lap;
      } else {
        nxt.u[j] = (2 * cur.u[j] - (1 - c) * levels[n - 1].u[j] + r * lap) / (1 + c);
      }
    }
    nxt.solid = solid;
    double xs = static_cast<double>(solid - 1) * dx;
    for (std::size_t j = solid; j < nxt.u.size(); ++j)
      nxt.u[j] = nxt.u[solid - 1] * (ell_next - static_cast<double>(j) * dx) / (ell_next - xs);
    levels.push_back(std::move(nxt));
  }

  WaveField& F = out.field;
  F.epsilon = eps;
  F.dt = dt;
  F.dx = dx;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const Level& L = levels[n];
    F.t.push_back(static_cast<double>(n) * dt);
    F.ell.push_back(L.ell);
    F.ell_dot.push_back(out.front.knots() > 1 ? out.front.slope(n == 0 ? 0.5 * dt : static_cast<double>(n) * dt)
                                              : 0.0);
    F.u.push_back(L.u);
    std::vector<double> ut(L.u.size()), ux(L.u.size());
    for (std::size_t j = 0; j < L.u.size(); ++j) {
      double x = static_cast<double>(j) * dx;
      if (n == 0) {
        ut[j] = p.init.u1(std::min(x, p.params.ell0));
      } else if (n + 1 < levels.size()) {
        ut[j] = (value(levels[n + 1], dx, j) - value(levels[n - 1], dx, j)) / (2 * dt);
      } else {
        ut[j] = (L.u[j] - value(levels[n - 1], dx, j)) / dt;
      }
      if (j == 0)
        ux[j] = (-3 * L.u[0] + 4 * value(L, dx, 1) - value(L, dx, 2)) / (2 * dx);
      else
        ux[j] = (value(L, dx, j + 1) - L.u[j - 1]) / (2 * dx);
    }
    F.ut.push_back(std::move(ut));
    F.ux_left.push_back(ux[0]);
    F.ux.push_back(std::move(ux));
    F.ux_front.push_back(slope_at_front(L, dx));
    F.ut_front.push_back(n == 0 ? p.init.u1(p.params.ell0) : -F.ell_dot.back() * F.ux_front.back());
  }
  return out;
}

RunDistance run_distance(const WaveField& a, const WaveField& b) {
  if (std::abs(a.dt - b.dt) > 1e-14 * a.dt || std::abs(a.dx - b.dx) > 1e-12 * a.dx)
    throw Error(ErrorKind::configuration, "runs are on different grids");
  RunDistance d;
  std::size_t n = std::min(a.steps(), b.steps());
  for (std::size_t k = 0; k < n; ++k) {
    d.front = std::max(d.front, std::abs(a.ell[k] - b.ell[k]));
    double lim = std::min(a.ell[k], b.ell[k]);
    std::size_t m = std::min(a.u[k].size(), b.u[k].size());
    for (std::size_t j = 0; j < m; ++j) {
      if (static_cast<double>(j) * a.dx >= lim) break;
      d.field = std::max(d.field, std::abs(a.u[k][j] - b.u[k][j]));
    }
  }
  return d;
}

}  // namespace debond
