#include "debond/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace debond {

namespace {

struct Patch {
  double area = 0.0;
  double cx = 0.0;
  double cy = 0.0;
};

// Rectangle [x0,x1] x [y0,y1] intersected with the half-plane x + y >= 0.
Patch clip_rectangle(double x0, double x1, double y0, double y1) {
  Patch p;
  if (!(x1 > x0) || !(y1 > y0)) return p;
  std::array<std::array<double, 2>, 4> box = {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
  std::array<std::array<double, 2>, 8> poly{};
  std::size_t n = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& a = box[k];
    const auto& b = box[(k + 1) % 4];
    double da = a[0] + a[1];
    double db = b[0] + b[1];
    if (da >= 0) poly[n++] = a;
    if ((da >= 0) != (db >= 0)) {
      double r = da / (da - db);
      poly[n++] = {a[0] + r * (b[0] - a[0]), a[1] + r * (b[1] - a[1])};
    }
  }
  if (n < 3) return p;
  double a2 = 0, sx = 0, sy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = poly[k];
    const auto& b = poly[(k + 1) % n];
    double cr = a[0] * b[1] - b[0] * a[1];
    a2 += cr;
    sx += (a[0] + b[0]) * cr;
    sy += (a[1] + b[1]) * cr;
  }
  if (a2 <= 0) return p;
  p.area = 0.5 * a2;
  p.cx = sx / (3.0 * a2);
  p.cy = sy / (3.0 * a2);
  return p;
}

long floor_index(double v, double ds) { return static_cast<long>(std::floor(v / ds)); }

}  // namespace

Lattice::Lattice(double epsilon, double ds) : eps_(epsilon), ds_(ds) {
  if (!(epsilon > 0) || !(ds > 0)) throw Error(ErrorKind::validation, "lattice needs positive epsilon and ds");
}

std::size_t Lattice::inside_count(const Front& front, double epsilon, double ds, long K) {
  double t = static_cast<double>(K) * ds * 0.5;
  double ell = front(t);
  double jmax = 2.0 * epsilon * ell / ds;
  jmax *= 1.0 + 1e-12;
  long p = K & 1;
  if (jmax < static_cast<double>(p)) return 0;
  return static_cast<std::size_t>(std::floor((jmax - static_cast<double>(p)) / 2.0)) + 1;
}

double Lattice::theta_node(long i, long l) const {
  long K = i + l;
  long J = i - l;
  if (K < 0) K = -K;
  if (J < 0) J = -J;
  long last = top();
  if (last < 0) throw Error(ErrorKind::precondition, "lattice has no levels");
  if (K > last) K = ((K - last) % 2 == 0) ? last : last - 1;
  if (K < 0) K = 0;
  const auto& th = levels_[static_cast<std::size_t>(K)].theta;
  if (th.empty()) throw Error(ErrorKind::precondition, "theta missing on level " + std::to_string(K));
  auto q = static_cast<std::size_t>((J - (K & 1)) / 2);
  if (q >= th.size()) q = th.size() - 1;
  return th[q];
}

double Lattice::theta_at(double xi, double eta) const {
  long i0 = floor_index(xi, ds_);
  long l0 = floor_index(eta, ds_);
  double a = xi / ds_ - static_cast<double>(i0);
  double b = eta / ds_ - static_cast<double>(l0);
  double v = (1 - a) * (1 - b) * theta_node(i0, l0);
  if (a > 0) v += a * (1 - b) * theta_node(i0 + 1, l0);
  if (b > 0) v += (1 - a) * b * theta_node(i0, l0 + 1);
  if (a > 0 && b > 0) v += a * b * theta_node(i0 + 1, l0 + 1);
  return v;
}

double Lattice::column_integral(double c, double e0, double e1) const {
  if (e1 < e0) return -column_integral(c, e1, e0);
  long i0 = floor_index(c, ds_);
  double a = c / ds_ - static_cast<double>(i0);
  auto col = [&](long l) {
    double v = (1 - a) * theta_node(i0, l);
    if (a > 0) v += a * theta_node(i0 + 1, l);
    return v;
  };
  double total = 0.0;
  long l = floor_index(e0, ds_);
  double lo = e0;
  while (lo < e1) {
    double row_lo = static_cast<double>(l) * ds_;
    double hi = std::min(e1, static_cast<double>(l + 1) * ds_);
    if (hi > lo) {
      double v0 = col(l);
      double v1 = col(l + 1);
      double p = (lo - row_lo) / ds_;
      double q = (hi - row_lo) / ds_;
      total += 0.5 * (hi - lo) * ((v0 + p * (v1 - v0)) + (v0 + q * (v1 - v0)));
    }
    lo = std::max(lo, hi);
    ++l;
  }
  return total;
}

double Lattice::row_integral(double c, double x0, double x1) const {
  if (x1 < x0) return -row_integral(c, x1, x0);
  long l0 = floor_index(c, ds_);
  double b = c / ds_ - static_cast<double>(l0);
  auto row = [&](long i) {
    double v = (1 - b) * theta_node(i, l0);
    if (b > 0) v += b * theta_node(i, l0 + 1);
    return v;
  };
  double total = 0.0;
  long i = floor_index(x0, ds_);
  double lo = x0;
  while (lo < x1) {
    double col_lo = static_cast<double>(i) * ds_;
    double hi = std::min(x1, static_cast<double>(i + 1) * ds_);
    if (hi > lo) {
      double v0 = row(i);
      double v1 = row(i + 1);
      double p = (lo - col_lo) / ds_;
      double q = (hi - col_lo) / ds_;
      total += 0.5 * (hi - lo) * ((v0 + p * (v1 - v0)) + (v0 + q * (v1 - v0)));
    }
    lo = std::max(lo, hi);
    ++i;
  }
  return total;
}

double Lattice::line_xi(double c, double tau_a, double tau_b) const {
  return 0.5 * column_integral(c, 2.0 * tau_a - c, 2.0 * tau_b - c);
}

double Lattice::line_eta(double c, double tau_a, double tau_b) const {
  return 0.5 * row_integral(c, 2.0 * tau_a - c, 2.0 * tau_b - c);
}

// ---------------------------------------------------------------------------

ReflectionOperator::ReflectionOperator(Lattice& lattice, const CharMaps& maps, double ell0)
    : lat_(&lattice), maps_(&maps), ell0_(ell0) {}

double ReflectionOperator::beta(double xi) const {
  double span = lat_->epsilon() * ell0_;
  return xi < span ? -xi : maps_->omega(xi);
}

bool ReflectionOperator::inside(double xi, double eta) const {
  double tol = 1e-12 * std::max(1.0, std::abs(xi));
  return eta <= xi + tol && eta >= beta(xi) - tol;
}

double ReflectionOperator::node_h(long i, long l) const {
  long K = i + l;
  long J = i - l;
  if (K <= 0 || J <= 0) return 0.0;
  if (K > lat_->top()) throw Error(ErrorKind::insufficient_front, "H requested above the solved levels");
  const auto& H = lat_->level(K).H;
  auto q = static_cast<std::size_t>((J - (K & 1)) / 2);
  return q < H.size() ? H[q] : 0.0;
}

static bool node_inside(const Lattice& lat, long i, long l) {
  long K = i + l;
  long J = i - l;
  if (K < 0 || J < 0 || K > lat.top()) return false;
  auto q = static_cast<std::size_t>((J - (K & 1)) / 2);
  return q < lat.level(K).theta.size();
}

double ReflectionOperator::on_column(long i, double eta) const {
  const double ds = lat_->ds();
  const double xi = static_cast<double>(i) * ds;
  double lower_eta = beta(xi);
  if (eta <= lower_eta) return 0.0;
  long l0 = floor_index(eta, ds);
  double e0 = static_cast<double>(l0) * ds;
  double h0 = 0.0;
  if (e0 >= lower_eta && node_inside(*lat_, i, l0)) {
    lower_eta = e0;
    h0 = node_h(i, l0);
  }
  if (eta == lower_eta) return h0;
  double e1 = static_cast<double>(l0 + 1) * ds;
  double h1 = node_h(i, l0 + 1);
  return h0 + (eta - lower_eta) / (e1 - lower_eta) * (h1 - h0);
}

double ReflectionOperator::on_row(long l, double xi) const {
  const double ds = lat_->ds();
  const double eta = static_cast<double>(l) * ds;
  double left = std::max(eta, -eta);
  if (xi <= left) return 0.0;
  long i0 = floor_index(xi, ds);
  double x0 = static_cast<double>(i0) * ds;
  double h0 = 0.0;
  double lo = left;
  if (x0 >= left && node_inside(*lat_, i0, l)) {
    lo = x0;
    h0 = node_h(i0, l);
  }
  if (xi == lo) return h0;
  double hi, h1;
  if (node_inside(*lat_, i0 + 1, l)) {
    hi = static_cast<double>(i0 + 1) * ds;
    h1 = node_h(i0 + 1, l);
  } else {
    hi = maps_->omega_inv(eta);
    h1 = 0.0;
    if (xi >= hi) return 0.0;
  }
  return h0 + (xi - lo) / (hi - lo) * (h1 - h0);
}

double ReflectionOperator::diamond(long K, long J) const {
  if (K <= 0 || J <= 0) return 0.0;
  const double ds = lat_->ds();
  long i = (K + J) / 2 - 1;
  long l = (K - J) / 2 - 1;
  double xi0 = static_cast<double>(i) * ds;
  double xi1 = xi0 + ds;
  double e0 = static_cast<double>(l) * ds;
  double e1 = e0 + ds;
  double hw = node_h(i, l + 1);
  double ha, hs, eta_a;
  if (node_inside(*lat_, i + 1, l)) {
    eta_a = e0;
    ha = node_h(i + 1, l);
    hs = (K >= 2) ? node_h(i, l) : 0.0;
  } else {
    eta_a = std::clamp(beta(xi1), e0, e1);
    ha = 0.0;
    hs = on_column(i, eta_a);
  }
  if (field_) {
    const auto& F = *field_;
    double us = F.P_node(i) + (eta_a == e0 ? F.Q_node(l) : F.Q(eta_a)) - F.nu * hs;
    double ua = F.P_node(i + 1) + (eta_a == e0 ? F.Q_node(l) : F.Q(eta_a)) - F.nu * ha;
    double uw = F.P_node(i) + F.Q_node(l + 1) - F.nu * hw;
    double un = F.P_node(i + 1) + F.Q_node(l + 1);
    return field_cell({{xi0, eta_a, us, false}, {xi1, eta_a, ua, false}, {xi1, e1, un, true}, {xi0, e1, uw, false}},
                      ha, hw, hs);
  }
  Patch p = clip_rectangle(xi0, xi1, eta_a, e1);
  double src = p.area > 0 ? lat_->theta_at(p.cx, p.cy) * p.area / (4.0 * lat_->epsilon()) : 0.0;
  return ha + hw - hs + src;
}

double ReflectionOperator::field_cell(std::vector<Vertex> corners, double ha, double hw, double hs) const {
  const auto& F = *field_;
  // Keep the part with t >= 0; H vanishes on t = 0, so u there is P + Q.
  std::vector<Vertex> poly;
  const std::size_t n = corners.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex& a = corners[k];
    const Vertex& b = corners[(k + 1) % n];
    double sa = a.xi + a.eta, sb = b.xi + b.eta;
    if (sa >= 0) poly.push_back(a);
    if ((sa < 0) != (sb < 0)) {
      double r = sa / (sa - sb);
      double xi = a.xi + r * (b.xi - a.xi);
      double eta = a.eta + r * (b.eta - a.eta);
      poly.push_back({xi, eta, F.P(xi) + F.Q(eta), false});
    }
  }
  // Cell integral of u_t as the boundary integral of u (d eta - d xi), by
  // trapezoids; the unknown -nu H at the target enters through c_n.
  double integral = 0.0, cn = 0.0;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vertex& a = poly[k];
    const Vertex& b = poly[(k + 1) % m];
    integral += 0.5 * (a.u + b.u) * ((b.eta - a.eta) - (b.xi - a.xi));
    if (a.target) {
      const Vertex& prev = poly[(k + m - 1) % m];
      cn = 0.5 * ((b.eta - prev.eta) - (b.xi - prev.xi));
    }
  }
  const double q = 4.0 * lat_->epsilon();
  return (ha + hw - hs + integral / q) / (1.0 + F.nu * cn / q);
}

void ReflectionOperator::update_levels(long K_from, long K_to) {
  for (long K = std::max(0L, K_from); K <= K_to; ++K) {
    auto& lev = lat_->level(K);
    lev.H.assign(lev.theta.size(), 0.0);
    for (std::size_t q = 0; q < lev.H.size(); ++q) {
      long J = (K & 1) + 2 * static_cast<long>(q);
      lev.H[q] = diamond(K, J);
    }
  }
}

double ReflectionOperator::value(double t, double x) const {
  if (t <= 0 || x <= 0) return 0.0;
  const double ds = lat_->ds();
  const double eps = lat_->epsilon();
  double xi = t + eps * x;
  double eta = t - eps * x;
  long i = floor_index(xi, ds);
  long l = floor_index(eta, ds);
  double xi0 = static_cast<double>(i) * ds;
  double e0 = static_cast<double>(l) * ds;
  if (i <= l) {
    // Cell cut by x = 0: linear on the triangle (S, E, N) with H = 0 at S and N.
    double he = node_inside(*lat_, i + 1, l) ? node_h(i + 1, l) : 0.0;
    double a = (xi - xi0) / ds;
    double b = (eta - e0) / ds;
    return (a - b) * he;
  }
  double eta_a = std::max(e0, beta(xi));
  double top = eta_a == e0 ? on_row(l, xi) : 0.0;
  if (field_) {
    const auto& F = *field_;
    double hw = on_column(i, eta), hs = on_column(i, eta_a);
    double p0 = F.P_node(i), p1 = F.P(xi);
    double qa = F.Q(eta_a), q1 = F.Q(eta);
    return field_cell({{xi0, eta_a, p0 + qa - F.nu * hs, false},
                       {xi, eta_a, p1 + qa - F.nu * top, false},
                       {xi, eta, p1 + q1, true},
                       {xi0, eta, p0 + q1 - F.nu * hw, false}},
                      top, hw, hs);
  }
  double h = top + on_column(i, eta) - on_column(i, eta_a);
  Patch p = clip_rectangle(xi0, xi, eta_a, eta);
  if (p.area > 0) h += lat_->theta_at(p.cx, p.cy) * p.area / (4.0 * eps);
  return h;
}

double ReflectionOperator::g(double s) const {
  const double span = lat_->epsilon() * ell0_;
  int n = maps_->count_n(s);
  double total = 0.0;
  double d = 1.0;
  double sj = s;
  for (int j = 0; j < n; ++j) {
    total += 0.5 * d * lat_->line_xi(sj, maps_->psi_inv(sj), sj);
    total -= 0.5 * d * lat_->line_eta(sj, sj, maps_->phi_inv(sj));
    d *= maps_->omega_dot(sj);
    sj = maps_->omega(sj);
  }
  double last;
  if (sj < 0) {
    last = -lat_->line_eta(sj, 0.0, maps_->phi_inv(std::max(sj, -span)));
  } else {
    last = lat_->line_xi(sj, 0.0, sj) - lat_->line_eta(sj, sj, maps_->phi_inv(sj));
  }
  return total + 0.5 * d * last;
}

double ReflectionOperator::g_head(double s) const {
  return 0.5 * (lat_->line_xi(s, maps_->psi_inv(s), s) - lat_->line_eta(s, s, maps_->phi_inv(s)));
}

double ReflectionOperator::hx_left(double t) const {
  const double span = lat_->epsilon() * ell0_;
  int m = maps_->count_m(t);
  double total = 0.0;
  double d = 1.0;
  double tj = t;
  for (int j = 0; j < m; ++j) {
    double back = maps_->psi_inv(tj);
    total += d * lat_->line_xi(tj, back, tj);
    double dn = d * maps_->omega_dot(tj);
    double tn = maps_->omega(tj);
    total -= dn * lat_->line_eta(tn, tn, back);
    d = dn;
    tj = tn;
  }
  if (tj < span) return total + d * lat_->line_xi(tj, 0.0, tj);
  double back = maps_->psi_inv(tj);
  double dn = d * maps_->omega_dot(tj);
  double tn = maps_->omega(tj);
  return total + d * lat_->line_xi(tj, back, tj) - dn * lat_->line_eta(tn, 0.0, back);
}

double ReflectionOperator::hx_front(double t) const {
  double rate = maps_->front().slope(t);
  return 2.0 / (1.0 + lat_->epsilon() * rate) * g(maps_->phi(t));
}

double ReflectionOperator::g_minus_half_hx(double s) const {
  return -0.5 * lat_->line_eta(s, s, maps_->phi_inv(s));
}

void fill_theta(Lattice& lattice, const Front& front, long top,
                const std::function<double(double, double)>& theta) {
  lattice.resize(top + 1);
  for (long K = 0; K <= top; ++K) {
    std::size_t n = Lattice::inside_count(front, lattice.epsilon(), lattice.ds(), K);
    auto& lev = lattice.level(K);
    lev.theta.resize(n);
    lev.u.assign(n, 0.0);
    lev.H.assign(n, 0.0);
    for (std::size_t q = 0; q < n; ++q) {
      long J = (K & 1) + 2 * static_cast<long>(q);
      lev.theta[q] = theta(lattice.t_of(K), lattice.x_of(J));
    }
  }
}

}  // namespace debond
