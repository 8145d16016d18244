#pragma once

#include <memory>
#include <vector>

#include "debond/char_function.hpp"
#include "debond/front.hpp"
#include "debond/lattice.hpp"
#include "debond/model.hpp"

namespace debond {

// Field sampled on the rectangular grid t_k = k dt, x_j = j dx with dx = dt / eps;
// row k holds the nodes with x_j <= ell(t_k).
struct WaveField {
  double epsilon = 0.0;
  double dt = 0.0;
  double dx = 0.0;
  std::vector<double> t;
  std::vector<double> ell;
  std::vector<double> ell_dot;  // left segment slope, first segment at k = 0
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> ut;
  std::vector<std::vector<double>> ux;
  std::vector<double> ux_left;   // u_x(t_k, 0)
  std::vector<double> ux_front;  // u_x(t_k, ell(t_k)^-)
  std::vector<double> ut_front;  // u_t(t_k, ell(t_k)^-): u1(l0) at k = 0, else -l' u_x

  std::size_t steps() const { return t.size(); }
};

// (1/eps) max{(G0 - kappa)/(G0 + kappa), 0}.
double griffith_rate(double G0, double kappa, double epsilon);
// Explicit Euler steps of the front ODE, one per G0 sample, appended to `front`.
void advance_front(Front& front, const std::vector<double>& G0, const Toughness& tough);

// Characteristic solver for the coupled problem, marched one front knot at a
// time. Without damping G0 = 2 f'(phi(t))^2 exactly. With damping each lattice
// cell solves for its new corner from the boundary integral of u, and G0 is
// (1 + eps l')^2 u_x(t, l^-)^2 / 2 from the nodes next to the front, with the
// speed of the previous step.
class CoupledSolver {
 public:
  explicit CoupledSolver(const Problem& problem);
  CoupledSolver(const CoupledSolver&) = delete;
  CoupledSolver& operator=(const CoupledSolver&) = delete;

  void advance_to(double T);

  const Problem& problem() const { return problem_; }
  const Front& front() const { return front_; }
  const CharMaps& maps() const { return maps_; }
  const CharFunction& f() const { return f_; }
  const Lattice& lattice() const { return lattice_; }
  const ReflectionOperator& reflection() const { return op_; }
  double time() const { return front_.end_time(); }

  // G0 at knot k (k < knots - 1), the value that drove the Euler step from t_k.
  const std::vector<double>& G0() const { return G0_; }
  // G0 = 2 [f'(phi(t)) + nu g(phi(t))]^2 with the literal trace formula for g.
  double energy_release_rate(double t) const;

  WaveField field() const;

 private:
  void step();
  double next_G0();
  void build_level(long K);
  void compute_theta(long K);

  Problem problem_;
  double eps_;
  double nu_;
  double ds_;
  Front front_;
  CharMaps maps_;
  mutable CharFunction f_;  // grid caches fill lazily
  Lattice lattice_;
  ReflectionOperator op_;
  FieldSource source_;
  std::vector<double> G0_;
};

struct Solution {
  std::shared_ptr<CoupledSolver> solver;
  WaveField field;
};

Solution solve_coupled(const Problem& problem);

}  // namespace debond
