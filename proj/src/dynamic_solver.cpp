#include "debond/dynamic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace debond {

double griffith_rate(double G0, double kappa, double epsilon) {
  if (!(G0 > kappa)) return 0.0;
  return (G0 - kappa) / (G0 + kappa) / epsilon;
}

void advance_front(Front& front, const std::vector<double>& G0, const Toughness& tough) {
  for (double G : G0) {
    double ell = front.max_value();
    front.push(ell + front.ds() * griffith_rate(G, tough(ell), front.epsilon()));
  }
}

CoupledSolver::CoupledSolver(const Problem& problem)
    : problem_(problem),
      eps_(problem.params.epsilon),
      nu_(problem.params.nu),
      ds_(problem.params.ds),
      front_(eps_, problem.params.ell0, ds_),
      maps_(front_),
      f_(eps_, problem.params.ell0, ds_, problem_.loading, problem_.init, maps_),
      lattice_(eps_, ds_),
      op_(lattice_, maps_, problem.params.ell0) {
  problem_.params.validate();
  problem_.init.check_compatibility(problem_.loading);
  lattice_.resize(1);
  auto& lev = lattice_.level(0);
  std::size_t n = Lattice::inside_count(front_, eps_, ds_, 0);
  lev.u.resize(n);
  lev.H.assign(n, 0.0);
  lev.theta.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    double x = std::min(lattice_.x_of(2 * static_cast<long>(q)), problem_.params.ell0);
    lev.u[q] = problem_.init.u0(x);
    lev.theta[q] = problem_.init.u1(x);
  }
  if (nu_ > 0.0) {
    source_.nu = nu_;
    source_.P = [this](double xi) { return problem_.loading(xi) - f_.value(xi) / eps_; };
    source_.Q = [this](double eta) { return f_.value(eta) / eps_; };
    source_.P_node = [this](long i) {
      return problem_.loading(static_cast<double>(i) * ds_) - f_.grid_value(i) / eps_;
    };
    source_.Q_node = [this](long l) { return f_.grid_value(l) / eps_; };
    op_.set_field(&source_);
  }
}

void CoupledSolver::advance_to(double T) {
  auto target = static_cast<std::size_t>(std::ceil(T / ds_ - 1e-9));
  while (front_.knots() - 1 < target) step();
}

namespace {

// Last node x_a = a dx at least dx/2 behind the front.
std::size_t front_anchor(const std::vector<double>& u, double dx, double ell) {
  std::size_t a = u.size() - 1;
  while (a > 0 && ell - static_cast<double>(a) * dx < 0.5 * dx) --a;
  return a;
}

// u_x(t, l^-) from the quadratic through the anchor, its left neighbour and
// the zero value at the front.
double front_slope(const std::vector<double>& u, double dx, double ell) {
  std::size_t a = front_anchor(u, dx, ell);
  if (a == 0) return -u[0] / ell;
  double xa = static_cast<double>(a) * dx;
  double xb = xa - dx;
  return u[a - 1] * (ell - xa) / ((xb - xa) * (xb - ell)) + u[a] * (ell - xb) / ((xa - xb) * (xa - ell));
}

// Row value at node j, linear between the anchor and the front past the stored nodes.
double row_value(const std::vector<double>& u, double dx, double ell, std::size_t j) {
  if (j < u.size()) return u[j];
  std::size_t a = front_anchor(u, dx, ell);
  double xa = static_cast<double>(a) * dx;
  double x = static_cast<double>(j) * dx;
  return x >= ell ? 0.0 : u[a] * (ell - x) / (ell - xa);
}

}  // namespace

double CoupledSolver::next_G0() {
  const std::size_t k = front_.knots() - 1;
  if (nu_ == 0.0) {
    double v = f_.derivative(front_.phi_knots()[k]);
    return 2.0 * v * v;
  }
  const auto& u = lattice_.level(2 * static_cast<long>(k)).u;
  const double ell = front_.knot_value(k);
  double ux = front_slope(u, ds_ / eps_, ell);
  double rate = k == 0 ? 0.0 : (ell - front_.knot_value(k - 1)) / ds_;
  return 0.5 * std::pow(1.0 + eps_ * rate, 2) * ux * ux;
}

void CoupledSolver::step() {
  const std::size_t k = front_.knots() - 1;
  const double ell = front_.knot_value(k);
  double G = next_G0();
  if (ell > problem_.params.x_max)
    throw Error(ErrorKind::range,
                "front reached the toughness cap x_max at t=" + std::to_string(front_.knot_time(k)));
  G0_.push_back(G);
  front_.push(ell + ds_ * griffith_rate(G, problem_.toughness(ell), eps_));
  const long K = 2 * static_cast<long>(k);
  build_level(K + 1);
  build_level(K + 2);
  for (long L = std::max(1L, K - 2); L <= K + 2; ++L) compute_theta(L);
}

double CoupledSolver::energy_release_rate(double t) const {
  double s = maps_.phi(t);
  double v = f_.derivative(s);
  if (nu_ > 0) v += nu_ * op_.g(s);
  return 2.0 * v * v;
}

void CoupledSolver::build_level(long K) {
  if (lattice_.top() < K) lattice_.resize(K + 1);
  auto& lev = lattice_.level(K);
  std::size_t n = Lattice::inside_count(front_, eps_, ds_, K);
  lev.theta.assign(n, 0.0);  // sized first: the diamonds test membership by it
  lev.H.assign(n, 0.0);
  lev.u.assign(n, 0.0);
  const auto& w = problem_.loading;
  for (std::size_t q = 0; q < n; ++q) {
    long J = (K & 1) + 2 * static_cast<long>(q);
    long i = (K + J) / 2;
    long l = (K - J) / 2;
    double h = nu_ > 0 ? op_.diamond(K, J) : 0.0;
    lev.H[q] = h;
    double base = w(static_cast<double>(i) * ds_) - f_.grid_value(i) / eps_ + f_.grid_value(l) / eps_;
    lev.u[q] = base - nu_ * h;
  }
}

void CoupledSolver::compute_theta(long K) {
  auto& lev = lattice_.level(K);
  std::size_t n = lev.u.size();
  lev.theta.resize(n);
  if (K == 0) {
    for (std::size_t q = 0; q < n; ++q)
      lev.theta[q] = problem_.init.u1(std::min(lattice_.x_of(2 * static_cast<long>(q)), problem_.params.ell0));
    return;
  }
  // u_t from the representation: the f part is exact, so jumps of u_t across
  // characteristics stay sharp; only H is differenced.
  const long top = lattice_.top();
  const LatticeLevel* up = K + 2 <= top ? &lattice_.level(K + 2) : nullptr;
  const LatticeLevel* dn = K - 2 >= 0 ? &lattice_.level(K - 2) : nullptr;
  const long parity = K & 1;
  for (std::size_t q = 0; q < n; ++q) {
    long J = 2 * static_cast<long>(q) + parity;
    long i = (K + J) / 2, l = (K - J) / 2;
    double v = problem_.loading.derivative(static_cast<double>(i) * ds_) +
               (f_.grid_derivative(l) - f_.grid_derivative(i)) / eps_;
    if (nu_ > 0.0) {
      bool has_up = up && q < up->H.size();
      bool has_dn = dn && q < dn->H.size();
      double Ht = 0.0;
      if (has_up && has_dn)
        Ht = (up->H[q] - dn->H[q]) / (2 * ds_);
      else if (has_up)
        Ht = (up->H[q] - lev.H[q]) / ds_;
      else if (has_dn)
        Ht = (lev.H[q] - dn->H[q]) / ds_;
      v -= nu_ * Ht;
    }
    lev.theta[q] = v;
  }
}

namespace {

double deriv3(double x0, double y0, double x1, double y1, double x2, double y2, double at) {
  return y0 * ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2)) +
         y1 * ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2)) +
         y2 * ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
}

// x-derivative at node j of samples y on x_j = j dx, with y = 0 at x = ell.
double row_derivative(const std::vector<double>& y, double dx, double ell, std::size_t j) {
  const std::size_t n = y.size();
  auto xs = [&](std::size_t i) { return static_cast<double>(i) * dx; };
  if (j == 0) {
    if (n >= 3) return (-3 * y[0] + 4 * y[1] - y[2]) / (2 * dx);
    if (n == 2) return deriv3(0.0, y[0], dx, y[1], ell, 0.0, 0.0);
    return -y[0] / ell;
  }
  if (j + 1 < n) return (y[j + 1] - y[j - 1]) / (2 * dx);
  if (ell - xs(j) > 1e-9 * dx) return deriv3(xs(j - 1), y[j - 1], xs(j), y[j], ell, 0.0, xs(j));
  if (j >= 2) return deriv3(xs(j - 2), y[j - 2], xs(j - 1), y[j - 1], xs(j), y[j], xs(j));
  return (y[j] - y[j - 1]) / dx;
}

}  // namespace

WaveField CoupledSolver::field() const {
  WaveField out;
  out.epsilon = eps_;
  out.dt = ds_;
  out.dx = ds_ / eps_;
  const double dx = out.dx;
  const std::size_t N = front_.knots() - 1;
  const auto& w = problem_.loading;
  for (std::size_t k = 0; k <= N; ++k) {
    const long K = 2 * static_cast<long>(k);
    const auto& lev = lattice_.level(K);
    const std::size_t n = lev.u.size();
    double t = static_cast<double>(k) * ds_;
    double ell = front_.knot_value(k);
    out.t.push_back(t);
    out.ell.push_back(ell);
    out.ell_dot.push_back(N == 0 ? 0.0 : front_.slope(k == 0 ? 0.5 * ds_ : t));
    out.u.push_back(lev.u);
    std::vector<double> ut(n), ux(n);
    double front_x;
    if (k == 0) {
      // Initial data verbatim; the corner may be incompatible at first order.
      for (std::size_t j = 0; j < n; ++j) {
        double x = std::min(static_cast<double>(j) * dx, problem_.params.ell0);
        ut[j] = problem_.init.u1(x);
        ux[j] = problem_.init.du0(x);
      }
      front_x = problem_.init.du0(problem_.params.ell0);
    } else if (nu_ > 0) {
      // Differences of the nodal field, the quantity the damped lattice carries;
      // the exact f' has sub-cell spikes that the lattice H does not cancel.
      const auto& dn = lattice_.level(K - 2).u;
      double ell_dn = front_.knot_value(k - 1);
      const bool has_up = k < N;
      for (std::size_t j = 0; j < n; ++j) {
        double below = row_value(dn, dx, ell_dn, j);
        if (has_up) {
          double above = row_value(lattice_.level(K + 2).u, dx, front_.knot_value(k + 1), j);
          ut[j] = (above - below) / (2 * ds_);
        } else {
          ut[j] = (lev.u[j] - below) / ds_;
        }
        ux[j] = row_derivative(lev.u, dx, ell, j);
      }
      front_x = front_slope(lev.u, dx, ell);
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        long i = static_cast<long>(k + j);
        long l = static_cast<long>(k) - static_cast<long>(j);
        double dfa = f_.grid_derivative(i);
        double dfb = f_.grid_derivative(l);
        double dw = w.derivative(static_cast<double>(i) * ds_);
        ut[j] = dw - dfa / eps_ + dfb / eps_;
        ux[j] = eps_ * dw - dfa - dfb;
      }
      // Trace at the front from the characteristic values on both families.
      double sp = front_.psi_knots()[k];
      double sm = front_.phi_knots()[k];
      front_x = eps_ * w.derivative(sp) - f_.derivative(sp) - f_.derivative(sm);
    }
    out.ut.push_back(std::move(ut));
    out.ux_left.push_back(ux[0]);
    out.ux.push_back(std::move(ux));
    out.ux_front.push_back(front_x);
    out.ut_front.push_back(k == 0 ? problem_.init.u1(problem_.params.ell0) : -out.ell_dot.back() * front_x);
  }
  return out;
}

Solution solve_coupled(const Problem& problem) {
  Solution s;
  s.solver = std::make_shared<CoupledSolver>(problem);
  s.solver->advance_to(problem.params.t_end);
  s.field = s.solver->field();
  return s;
}

}  // namespace debond
