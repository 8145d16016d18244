#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "debond/dynamic_solver.hpp"
#include "debond/energy.hpp"
#include "debond/model.hpp"
#include "debond/quasistatic.hpp"

namespace debond {

// ---------------------------------------------------------------------------
// Single run with all diagnostics.

struct RunReport {
  Problem problem;
  WaveField field;
  Front front;
  std::vector<double> G0;
  EnergySeries energy;
  BalanceResidual balance;
  GriffithResiduals griffith;
  DecayReport decay;
};

RunReport simulate(const Problem& problem);

// ---------------------------------------------------------------------------
// Epsilon sweep against the quasistatic evolution.

struct SweepOptions {
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  double cells_per_span = 64.0;  // ds = eps l0 / cells_per_span
  double t_min_fraction = 0.1;
  std::optional<double> start;   // quasistatic start length; see resolve_start
  unsigned threads = 0;          // 0: one per entry, capped by the hardware
  double continuity_width = 0.05;

  static SweepOptions from_json(const nlohmann::json& doc);
};

struct SweepEntry {
  double eps = 0.0;
  double ds = 0.0;
  double front_error = 0.0;       // sup |l - lambda| on [t_min, T]
  double front_error_rel = 0.0;   // divided by sup lambda there
  double trace_error = 0.0;       // L2(t_min, T) norm of u_x(., 0) + w / lambda
  double kinetic_max = 0.0;       // sup of (1/2) eps^2 int u_t^2 on [t_min, T]
  double kinetic_final = 0.0;
  double etilde_max = 0.0;        // sup of the modified energy on [t_min, T]
  double energy_bound = 0.0;      // sup of E + A + int kappa on [0, T]
  double max_increment = 0.0;     // sup of l(t + delta) - l(t) on [t_min, T]
  double ell_at_t_min = 0.0;
  double balance_max_relative = 0.0;
  double decay_m = 0.0;    // damped entries only
  double decay_C_T = 0.0;
  double runtime_seconds = 0.0;   // not written to CSV
  std::vector<double> t, ell, lambda, E, A, W, Etilde, kinetic, ux_left;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  double start = 0.0;
  double t_min = 0.0;
  double t_end = 0.0;
  double nu = 0.0;
  bool front_monotone = false;
  bool trace_monotone = false;
  bool kinetic_monotone = false;
  bool continuity_monotone = false;
  bool energy_bound_stable = false;
};

// Quasistatic start: options.start when set; l0 for stable equilibrium data;
// otherwise the plateau of the initial-jump run.
double resolve_start(const Problem& base, const SweepOptions& options);
SweepReport epsilon_sweep(const Problem& base, const SweepOptions& options);

// Values non-increasing along the list within the slack factor.
bool monotone_decrease(const std::vector<double>& values, double slack = 1.1);

// Linear extrapolation to eps = 0 through the two smallest-eps entries.
double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Initial jump: eps = 1, loading frozen at w(0), u1 = 0, run to a plateau.

struct JumpOptions {
  double ds = 0.005;
  double t_cap = 200.0;
  double plateau_tol = 1e-6;
  std::vector<double> sweep_eps{0.2, 0.1, 0.05, 0.025};
  double sweep_t_end = 0.0;  // 0: the base problem's t_end
  double cells_per_span = 64.0;
  double t_min_fraction = 0.1;
  bool with_sweep = true;

  static JumpOptions from_json(const nlohmann::json& doc);
};

struct JumpReport {
  double ell1 = 0.0;
  double plateau_time = 0.0;
  bool plateaued = false;
  double w0 = 0.0;
  double stability_bound = 0.0;  // w0 / sqrt(2 kappa(l1))
  double stability_slack = 0.0;  // w0^2 / (2 l1^2) - kappa(l1)
  bool stable = false;
  double E_T = 0.0;
  double limit_energy_error = 0.0;  // |E(T) - w0^2 / (2 l1)|
  double energy_gap = 0.0;          // E(0) - w0^2/(2 l1) - int_{l0}^{l1} kappa
  double dissipated = 0.0;          // A(T)
  double gap_relative_error = 0.0;
  std::vector<double> sweep_eps;
  std::vector<double> sweep_ell_t_min;
  double ell_plus_estimate = 0.0;
  double ell_plus_relative_error = 0.0;
  std::vector<double> t, ell, E, A;
};

// The unrescaled problem: eps = 1, w frozen at w(0), u1 = 0, grid step ds.
Problem unrescaled_problem(const Problem& base, double ds, double t_end);
JumpReport initial_jump(const Problem& base, const JumpOptions& options);

// ---------------------------------------------------------------------------
// Identity and invariant checks on one run.

struct VerifyReport {
  nlohmann::json checks;  // name -> {value, tol, pass}
  bool pass = true;
};
VerifyReport verify_run(const Problem& problem, std::uint64_t seed, std::size_t points = 50);

// Residual of g(s) - H_x(s, 0)/2 = -(1/2) int theta along eta = s at seeded points.
std::vector<double> magic_identity_residuals(const CoupledSolver& solver, std::uint64_t seed, std::size_t points);

// ---------------------------------------------------------------------------
// Characteristic solver against the finite-difference reference under refinement.

struct OracleRow {
  double ds = 0.0;
  double front = 0.0;
  double field = 0.0;
  double front_ratio = 0.0;  // previous / current, 0 on the first row
  double field_ratio = 0.0;
};
struct OracleReport {
  std::vector<OracleRow> rows;
  bool pass = false;  // every ratio >= 1.8
};
OracleReport oracle_compare(const Problem& problem, const std::vector<double>& ds_list);

// ---------------------------------------------------------------------------
// Report files: RFC 4180 CSV with '.' decimals and LF, UTF-8 JSON.

void write_run(const RunReport& run, const std::string& dir, bool dump_field);
void write_quasistatic(const QuasistaticEvolution& ev, const std::string& dir);
void write_sweep(const SweepReport& report, const std::string& dir);
void write_jump(const JumpReport& report, const std::string& dir);
void write_verify(const VerifyReport& report, const std::string& dir);
void write_oracle(const OracleReport& report, const std::string& dir);

nlohmann::json to_json(const RunReport& run);
nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const JumpReport& report);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json quasistatic_summary(const QuasistaticEvolution& ev);

}  // namespace debond
