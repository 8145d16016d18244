#pragma once

#include <functional>
#include <vector>

#include "debond/front.hpp"

namespace debond {

// Characteristic lattice: nodes (xi_i, eta_l) = (i ds, l ds). Level K = i + l
// holds the nodes at t = K ds / 2; the node index J = i - l is the position
// x = J ds / (2 eps), and only J with the parity of K occur on a level.
struct LatticeLevel {
  std::vector<double> u;
  std::vector<double> H;
  std::vector<double> theta;  // u_t, the source of the damping correction
};

class Lattice {
 public:
  Lattice(double epsilon, double ds);

  double epsilon() const { return eps_; }
  double ds() const { return ds_; }
  double t_of(long K) const { return static_cast<double>(K) * ds_ * 0.5; }
  double x_of(long J) const { return static_cast<double>(J) * ds_ / (2.0 * eps_); }

  long top() const { return static_cast<long>(levels_.size()) - 1; }
  LatticeLevel& level(long K) { return levels_[static_cast<std::size_t>(K)]; }
  const LatticeLevel& level(long K) const { return levels_[static_cast<std::size_t>(K)]; }
  void resize(long levels) { levels_.resize(static_cast<std::size_t>(levels)); }
  // Number of nodes of level K that lie in [0, front(t_K)].
  static std::size_t inside_count(const Front& front, double epsilon, double ds, long K);

  // Theta at lattice node (i, l): mirrored across t = 0 and x = 0, clamped to
  // the last stored level of the same parity, held constant past the front.
  double theta_node(long i, long l) const;
  // Bilinear interpolant of theta_node in (xi, eta).
  double theta_at(double xi, double eta) const;

  // Integrals of the bilinear theta along xi = c and eta = c, parametrised by
  // time from tau_a to tau_b. Exact for the interpolant.
  double line_xi(double c, double tau_a, double tau_b) const;
  double line_eta(double c, double tau_a, double tau_b) const;

 private:
  // Integral over eta in [e0, e1] of theta_at(c, eta), and the transpose.
  double column_integral(double c, double e0, double e1) const;
  double row_integral(double c, double x0, double x1) const;

  double eps_;
  double ds_;
  std::vector<LatticeLevel> levels_;
};

// Undamped part of the representation, u = P(xi) + Q(eta) - nu H. With a
// source attached, each cell integral of theta = u_t is taken from u on the
// cell boundary and solved for the new corner, instead of the midpoint rule
// on stored theta.
struct FieldSource {
  double nu = 0.0;
  std::function<double(double)> P;
  std::function<double(double)> Q;
  std::function<double(long)> P_node;  // P(i ds)
  std::function<double(long)> Q_node;  // Q(l ds)
};

// Damping correction H (eps^2 H_tt - H_xx = eps theta, zero data) on the
// lattice, and the boundary traces entering the energy release rate.
class ReflectionOperator {
 public:
  ReflectionOperator(Lattice& lattice, const CharMaps& maps, double ell0);

  // Lower boundary of the domain in eta at a given xi.
  double beta(double xi) const;
  bool inside(double xi, double eta) const;

  // Diamond update for node J of level K from levels K-1, K-2.
  double diamond(long K, long J) const;
  // Recomputes H on every node of levels [K_from, K_to].
  void update_levels(long K_from, long K_to);

  // H at an arbitrary point of the domain, from the stored lattice values.
  double value(double t, double x) const;

  // Trace functionals g (front) and H_x(t, 0).
  double g(double s) const;
  // First term of g for s >= eps l0, so that g(s) = g_head(s) + omega'(s) g(omega(s)).
  double g_head(double s) const;
  double hx_left(double t) const;
  double hx_front(double t) const;
  // -1/2 line_eta(s, s, phi^{-1}(s)); equals g(s) - hx_left(s)/2.
  double g_minus_half_hx(double s) const;

  // Attaches (or with nullptr detaches) the field used by diamond and value.
  void set_field(const FieldSource* field) { field_ = field; }
  const FieldSource* field() const { return field_; }

 private:
  struct Vertex {
    double xi, eta, u;
    bool target;
  };
  // H at the target corner of the cell with the given corners (counterclockwise
  // in (xi, eta)), from H_a + H_w - H_s plus the boundary integral of u.
  double field_cell(std::vector<Vertex> corners, double ha, double hw, double hs) const;
  double on_column(long i, double eta) const;
  double on_row(long l, double xi) const;
  double node_h(long i, long l) const;

  Lattice* lat_;
  const CharMaps* maps_;
  double ell0_;
  const FieldSource* field_ = nullptr;
};

// Fills theta on levels [0, top] from an explicit function of (t, x), and
// creates the inside nodes for the front. Used by checks with known sources.
void fill_theta(Lattice& lattice, const Front& front, long top,
                const std::function<double(double, double)>& theta);

}  // namespace debond
