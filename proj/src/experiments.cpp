#include "debond/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "debond/fd_oracle.hpp"

namespace debond {

RunReport simulate(const Problem& problem) {
  Solution sol = solve_coupled(problem);
  const auto& solver = *sol.solver;
  RunReport r{problem,
              sol.field,
              solver.front(),
              solver.G0(),
              compute_energies(sol.field, problem.loading, problem.params.nu),
              {},
              {},
              {}};
  r.balance = balance_residual(r.energy, problem.toughness);
  r.griffith = griffith_residuals(r.front, r.G0, problem.toughness);
  r.decay = decay_envelope_check(r.energy, r.field, problem.loading, problem.params.nu);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> number_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorKind::validation, "expected an array of numbers", where);
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw Error(ErrorKind::validation, "expected a number", where + "/" + std::to_string(i));
    out.push_back(v[i].get<double>());
  }
  return out;
}

double number_or(const nlohmann::json& obj, const char* key, double fallback, const std::string& base) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw Error(ErrorKind::validation, "expected a number", base + "/" + key);
  return obj.at(key).get<double>();
}

void check_eps_list(const std::vector<double>& eps, const std::string& where) {
  if (eps.empty()) throw Error(ErrorKind::validation, "epsilon list is empty", where);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) throw Error(ErrorKind::validation, "epsilon must be positive", where + "/" + std::to_string(i));
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw Error(ErrorKind::validation, "epsilon list must be strictly decreasing", where + "/" + std::to_string(i));
  }
}

// Runs job(i) for i < n on up to `threads` workers; rethrows the first failure
// with the index attached by the caller's message.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job&& job) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned workers = threads > 0 ? threads : hw;
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

bool equilibrium_data(const Problem& p) {
  const double w0 = p.loading(0.0);
  const double l0 = p.params.ell0;
  for (double v : p.init.u1_table().values())
    if (v != 0.0) return false;
  const auto& u0 = p.init.u0_table();
  for (std::size_t i = 0; i < u0.nodes().size(); ++i) {
    double x = u0.nodes()[i];
    if (std::abs(u0.values()[i] - w0 * (1.0 - x / l0)) > 1e-14 * (1.0 + std::abs(w0))) return false;
  }
  return 0.5 * w0 * w0 / (l0 * l0) <= p.toughness(l0) * (1.0 + 1e-12);
}

SweepEntry run_entry(const Problem& base, double eps, const SweepOptions& opt, double start) {
  auto clock0 = std::chrono::steady_clock::now();
  SweepEntry e;
  e.eps = eps;
  e.ds = eps * base.params.ell0 / opt.cells_per_span;
  Problem p = base.with_epsilon(eps, e.ds);
  Solution sol;
  try {
    sol = solve_coupled(p);
  } catch (const Error& err) {
    throw Error(err.kind(), "sweep entry eps=" + std::to_string(eps) + ": " + err.what(), err.pointer());
  }
  const WaveField& F = sol.field;
  QuasistaticEvolution qs = quasistatic_front(p.toughness, p.loading, F.t, start);
  EnergySeries en = compute_energies(F, p.loading, p.params.nu);
  e.balance_max_relative = balance_residual(en, p.toughness).max_relative;
  if (p.params.nu > 0) {
    DecayReport d = decay_envelope_check(en, F, p.loading, p.params.nu);
    e.decay_m = d.constants.m;
    e.decay_C_T = d.empirical_C_T;
  }
  const double T = F.t.back();
  const double t_min = opt.t_min_fraction * T;
  const auto width = static_cast<std::size_t>(std::llround(opt.continuity_width / e.ds));
  double lam_max = 0.0, trace_sq = 0.0;
  bool have_prev = false;
  double prev_t = 0.0, prev_v = 0.0;
  for (std::size_t k = 0; k < F.steps(); ++k) {
    double bound = en.E[k] + en.A[k] + p.toughness.integral(p.params.ell0, F.ell[k]);
    e.energy_bound = std::max(e.energy_bound, bound);
    if (F.t[k] < t_min - 1e-12) continue;
    if (e.ell_at_t_min == 0.0) e.ell_at_t_min = F.ell[k];
    e.front_error = std::max(e.front_error, std::abs(F.ell[k] - qs.lambda[k]));
    lam_max = std::max(lam_max, qs.lambda[k]);
    e.kinetic_max = std::max(e.kinetic_max, en.kinetic[k]);
    e.etilde_max = std::max(e.etilde_max, en.Etilde[k]);
    double v = F.ux_left[k] + qs.w[k] / qs.lambda[k];
    v *= v;
    if (have_prev) trace_sq += 0.5 * (F.t[k] - prev_t) * (prev_v + v);
    have_prev = true;
    prev_t = F.t[k];
    prev_v = v;
    if (k + width < F.steps()) e.max_increment = std::max(e.max_increment, F.ell[k + width] - F.ell[k]);
  }
  e.front_error_rel = lam_max > 0 ? e.front_error / lam_max : 0.0;
  e.trace_error = std::sqrt(trace_sq);
  e.kinetic_final = en.kinetic.back();
  e.t = F.t;
  e.ell = F.ell;
  e.lambda = qs.lambda;
  e.E = en.E;
  e.A = en.A;
  e.W = en.W;
  e.Etilde = en.Etilde;
  e.kinetic = en.kinetic;
  e.ux_left = F.ux_left;
  e.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock0).count();
  return e;
}

}  // namespace

SweepOptions SweepOptions::from_json(const nlohmann::json& doc) {
  SweepOptions o;
  if (!doc.contains("sweep")) return o;
  const auto& s = doc.at("sweep");
  if (!s.is_object()) throw Error(ErrorKind::validation, "sweep must be an object", "/sweep");
  if (s.contains("eps")) o.eps = number_list(s.at("eps"), "/sweep/eps");
  o.cells_per_span = number_or(s, "cells_per_span", o.cells_per_span, "/sweep");
  o.t_min_fraction = number_or(s, "t_min_fraction", o.t_min_fraction, "/sweep");
  o.continuity_width = number_or(s, "continuity_width", o.continuity_width, "/sweep");
  o.threads = static_cast<unsigned>(number_or(s, "threads", 0.0, "/sweep"));
  if (s.contains("start") && !s.at("start").is_null()) o.start = number_or(s, "start", 0.0, "/sweep");
  if (!(o.cells_per_span >= 8.0)) throw Error(ErrorKind::validation, "cells_per_span must be at least 8", "/sweep/cells_per_span");
  if (!(o.t_min_fraction >= 0.0 && o.t_min_fraction < 1.0))
    throw Error(ErrorKind::validation, "t_min_fraction must lie in [0, 1)", "/sweep/t_min_fraction");
  check_eps_list(o.eps, "/sweep/eps");
  return o;
}

double resolve_start(const Problem& base, const SweepOptions& options) {
  if (options.start) return *options.start;
  if (equilibrium_data(base)) return base.params.ell0;
  JumpOptions j;
  j.with_sweep = false;
  if (base.source.is_object()) j = JumpOptions::from_json(base.source);
  j.with_sweep = false;
  JumpReport r = initial_jump(base, j);
  if (!r.plateaued) throw Error(ErrorKind::invariant_violation, "initial-jump run did not plateau; set sweep.start");
  return r.ell1;
}

SweepReport epsilon_sweep(const Problem& base, const SweepOptions& options) {
  check_eps_list(options.eps, "/sweep/eps");
  SweepReport rep;
  rep.start = resolve_start(base, options);
  rep.t_end = base.params.t_end;
  rep.t_min = options.t_min_fraction * base.params.t_end;
  rep.nu = base.params.nu;
  rep.entries.resize(options.eps.size());
  parallel_for(options.eps.size(), options.threads,
               [&](std::size_t i) { rep.entries[i] = run_entry(base, options.eps[i], options, rep.start); });
  std::vector<double> fe, te, ke, inc, eb;
  for (const auto& e : rep.entries) {
    fe.push_back(e.front_error);
    te.push_back(e.trace_error);
    ke.push_back(e.kinetic_max);
    inc.push_back(e.max_increment);
    eb.push_back(e.energy_bound);
  }
  rep.front_monotone = monotone_decrease(fe);
  rep.trace_monotone = monotone_decrease(te);
  rep.kinetic_monotone = monotone_decrease(ke);
  rep.continuity_monotone = monotone_decrease(inc);
  auto [lo, hi] = std::minmax_element(eb.begin(), eb.end());
  rep.energy_bound_stable = *hi <= 1.1 * *lo;
  return rep;
}

bool monotone_decrease(const std::vector<double>& values, double slack) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > slack * values[i - 1]) return false;
  return true;
}

double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values) {
  const std::size_t n = eps.size();
  if (n == 0) throw Error(ErrorKind::precondition, "no sweep values to extrapolate");
  if (n == 1) return values[0];
  double e1 = eps[n - 2], e2 = eps[n - 1];
  double v1 = values[n - 2], v2 = values[n - 1];
  return v2 - e2 * (v1 - v2) / (e1 - e2);
}

// ---------------------------------------------------------------------------

JumpOptions JumpOptions::from_json(const nlohmann::json& doc) {
  JumpOptions o;
  if (!doc.contains("jump")) return o;
  const auto& s = doc.at("jump");
  if (!s.is_object()) throw Error(ErrorKind::validation, "jump must be an object", "/jump");
  o.ds = number_or(s, "ds", o.ds, "/jump");
  o.t_cap = number_or(s, "t_cap", o.t_cap, "/jump");
  o.plateau_tol = number_or(s, "plateau_tol", o.plateau_tol, "/jump");
  o.sweep_t_end = number_or(s, "sweep_t_end", o.sweep_t_end, "/jump");
  o.cells_per_span = number_or(s, "cells_per_span", o.cells_per_span, "/jump");
  o.t_min_fraction = number_or(s, "t_min_fraction", o.t_min_fraction, "/jump");
  if (s.contains("sweep_eps")) o.sweep_eps = number_list(s.at("sweep_eps"), "/jump/sweep_eps");
  if (!(o.ds > 0)) throw Error(ErrorKind::validation, "ds must be positive", "/jump/ds");
  if (!(o.t_cap >= 2)) throw Error(ErrorKind::validation, "t_cap must be at least 2", "/jump/t_cap");
  check_eps_list(o.sweep_eps, "/jump/sweep_eps");
  return o;
}

Problem unrescaled_problem(const Problem& base, double ds, double t_end) {
  Problem p = base;
  p.params.epsilon = 1.0;
  p.params.ds = ds;
  p.params.t_end = t_end;
  p.params.validate();
  p.loading = base.loading.frozen();
  p.init = InitialData(base.init.u0_table(), PiecewiseLinear({0.0, base.params.ell0}, {0.0, 0.0}), base.params.ell0);
  return p;
}

JumpReport initial_jump(const Problem& base, const JumpOptions& opt) {
  if (!(base.params.nu > 0.0))
    throw Error(ErrorKind::precondition, "initial jump needs nu > 0");
  if (!base.toughness.conditions(base.loading, base.params.t_end, opt.ds).K0)
    throw Error(ErrorKind::precondition, "condition K0 fails: kappa is integrable");
  JumpReport r;
  Problem p = unrescaled_problem(base, opt.ds, opt.t_cap);
  CoupledSolver solver(p);
  const auto last = static_cast<long>(std::floor(opt.t_cap + 1e-9));
  double T = 0.0;
  for (long n = 1; n <= last; ++n) {
    T = static_cast<double>(n);
    solver.advance_to(T);
    if (n >= 2 && std::abs(solver.front()(T) - solver.front()(T - 1.0)) < opt.plateau_tol) {
      r.plateaued = true;
      break;
    }
  }
  r.plateau_time = T;
  WaveField F = solver.field();
  EnergySeries en = compute_energies(F, p.loading, p.params.nu);
  const auto& tough = p.toughness;
  r.ell1 = F.ell.back();
  r.w0 = p.loading(0.0);
  r.stability_bound = std::abs(r.w0) / std::sqrt(2.0 * tough(r.ell1));
  r.stability_slack = 0.5 * r.w0 * r.w0 / (r.ell1 * r.ell1) - tough(r.ell1);
  r.stable = r.stability_slack <= 1e-9;
  r.E_T = en.E.back();
  double limit = 0.5 * r.w0 * r.w0 / r.ell1;
  r.limit_energy_error = std::abs(r.E_T - limit);
  r.energy_gap = en.E.front() - limit - tough.integral(p.params.ell0, r.ell1);
  r.dissipated = en.A.back();
  r.gap_relative_error = std::abs(r.energy_gap - r.dissipated) / std::max(std::abs(r.dissipated), 1e-300);
  r.t = F.t;
  r.ell = F.ell;
  r.E = en.E;
  r.A = en.A;

  if (opt.with_sweep) {
    Problem sb = base;
    if (opt.sweep_t_end > 0) sb.params.t_end = opt.sweep_t_end;
    const double t_min = opt.t_min_fraction * sb.params.t_end;
    r.sweep_eps = opt.sweep_eps;
    r.sweep_ell_t_min.assign(opt.sweep_eps.size(), 0.0);
    parallel_for(opt.sweep_eps.size(), 0, [&](std::size_t i) {
      double eps = opt.sweep_eps[i];
      Problem q = sb.with_epsilon(eps, eps * sb.params.ell0 / opt.cells_per_span);
      CoupledSolver s(q);
      s.advance_to(t_min);
      r.sweep_ell_t_min[i] = s.front()(t_min);
    });
    r.ell_plus_estimate = extrapolate_to_zero(r.sweep_eps, r.sweep_ell_t_min);
    r.ell_plus_relative_error = std::abs(r.ell_plus_estimate - r.ell1) / r.ell1;
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<double> magic_identity_residuals(const CoupledSolver& solver, std::uint64_t seed, std::size_t points) {
  const auto& maps = solver.maps();
  const auto& op = solver.reflection();
  double hi = maps.phi(solver.time());
  std::vector<double> out;
  if (!(hi > 0)) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(0.0, hi);
  for (std::size_t i = 0; i < points; ++i) {
    double s = pick(rng);
    if (s <= 0) s = 0.5 * hi;
    double lhs = op.g(s) - 0.5 * op.hx_left(s);
    out.push_back(std::abs(lhs - op.g_minus_half_hx(s)));
  }
  return out;
}

VerifyReport verify_run(const Problem& problem, std::uint64_t seed, std::size_t points) {
  VerifyReport rep;
  Solution sol = solve_coupled(problem);
  const CoupledSolver& solver = *sol.solver;
  const WaveField& F = sol.field;
  const auto& p = problem.params;
  const Loading& w = problem.loading;
  auto add = [&](const std::string& name, double value, double tol) {
    bool pass = std::isfinite(value) && value <= tol;
    rep.checks[name] = {{"value", value}, {"tol", tol}, {"pass", pass}};
    rep.pass = rep.pass && pass;
  };

  double w_sup = 0.0, dw_sup = 0.0;
  for (double t : F.t) {
    w_sup = std::max(w_sup, std::abs(w(t)));
    dw_sup = std::max(dw_sup, std::abs(w.derivative(t)));
  }
  // Reflection rule at the front knots, and the field itself extrapolated to the front.
  double rule = 0.0, front_value = 0.0, left = 0.0;
  for (std::size_t k = 1; k < F.steps(); ++k) {
    double h = p.nu > 0 ? solver.reflection().value(F.t[k], F.ell[k]) : 0.0;
    rule = std::max(rule, std::abs(solver.f().reflection_residual(F.t[k]) - p.nu * h));
    const auto& row = F.u[k];
    double x_last = static_cast<double>(row.size() - 1) * F.dx;
    front_value = std::max(front_value, std::abs(row.back() + (F.ell[k] - x_last) * F.ux_front[k]));
  }
  for (std::size_t k = 0; k < F.steps(); ++k) left = std::max(left, std::abs(F.u[k][0] - w(F.t[k])));
  add("rule_ii_residual", rule, 1e-9 * (1.0 + w_sup));
  add("boundary_left", left, 1e-9 * (1.0 + w_sup));
  add("boundary_front", front_value, 5.0 * p.ds * (1.0 + dw_sup));

  auto magic = magic_identity_residuals(solver, seed, points);
  double magic_max = magic.empty() ? 0.0 : *std::max_element(magic.begin(), magic.end());
  add("magic_identity", magic_max, 1e-8);

  GriffithResiduals g = griffith_residuals(solver.front(), solver.G0(), problem.toughness);
  add("slope_min_negative", std::max(0.0, -g.min_slope), 0.0);
  add("slope_max_times_eps", g.max_slope * p.epsilon, std::nextafter(1.0, 0.0));
  add("griffith_complementarity_scaled", g.max_complementarity_scaled, 10.0 * p.ds);
  add("griffith_stability", std::max(0.0, g.max_stability), 1e-9);

  EnergySeries en = compute_energies(F, w, p.nu);
  BalanceResidual bal = balance_residual(en, problem.toughness);
  add("energy_balance_relative", bal.max_relative, 5.0 * p.ds);
  double squares = 0.0, a_drop = 0.0, e_min = INFINITY, et_min = INFINITY;
  for (std::size_t k = 0; k < en.t.size(); ++k) {
    squares = std::max(squares, std::abs(en.Etilde[k] - en.Etilde_direct[k]));
    if (k > 0) a_drop = std::max(a_drop, en.A[k - 1] - en.A[k]);
    e_min = std::min(e_min, en.E[k]);
    et_min = std::min(et_min, en.Etilde[k]);
  }
  const double E0 = en.E.front();
  add("modified_energy_identity", squares, 1e-12);
  add("dissipation_decrease", a_drop, 1e-12);
  add("energy_negative", std::max(0.0, -e_min), 0.0);
  add("modified_energy_negative", std::max(0.0, -et_min), 5.0 * p.ds * (E0 + 1.0));

  if (p.nu > 0) {
    DecayReport d = decay_envelope_check(en, F, w, p.nu);
    rep.checks["decay_envelope"] = {{"m", d.constants.m},
                                    {"mu0", d.constants.mu0},
                                    {"mu1", d.constants.mu1},
                                    {"L_T", d.L_T},
                                    {"empirical_C_T", d.empirical_C_T},
                                    {"pass", std::isfinite(d.empirical_C_T)}};
    rep.pass = rep.pass && std::isfinite(d.empirical_C_T);
  } else {
    rep.checks["decay_envelope"] = {{"applicable", false}, {"pass", true}};
  }
  double covered = std::min(F.ell.front(), static_cast<double>(F.u.front().size() - 1) * F.dx);
  if (covered >= p.ell0 - 1e-9 || F.ell.front() >= p.ell0) {
    BoundaryWorkReport bw = boundary_work_identity_check(F, problem);
    add("boundary_work_identity", bw.max_residual, p.ds * (E0 + 1.0));
  }
  rep.checks["seed"] = seed;
  rep.checks["points"] = points;
  return rep;
}

// ---------------------------------------------------------------------------

OracleReport oracle_compare(const Problem& problem, const std::vector<double>& ds_list) {
  OracleReport rep;
  rep.rows.resize(ds_list.size());
  parallel_for(ds_list.size(), 0, [&](std::size_t i) {
    Problem p = problem.with_epsilon(problem.params.epsilon, ds_list[i]);
    Solution sol = solve_coupled(p);
    FdResult fd = fd_oracle_solve(p);
    RunDistance d = run_distance(sol.field, fd.field);
    rep.rows[i].ds = ds_list[i];
    rep.rows[i].front = d.front;
    rep.rows[i].field = d.field;
  });
  rep.pass = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    auto& r = rep.rows[i];
    r.front_ratio = rep.rows[i - 1].front / r.front;
    r.field_ratio = rep.rows[i - 1].field / r.field;
    rep.pass = rep.pass && r.front_ratio >= 1.8 && r.field_ratio >= 1.8;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const std::string& dir, const std::string& name, const std::vector<std::string>& header) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create output directory " + dir + ": " + ec.message());
    path_ = (std::filesystem::path(dir) / name).string();
    out_.open(path_, std::ios::binary);
    if (!out_) throw Error(ErrorKind::io, "cannot open " + path_ + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << num(values[i]);
    out_ << '\n';
  }
  ~Csv() noexcept(false) {
    out_.close();
    if (out_.fail() && std::uncaught_exceptions() == 0) throw Error(ErrorKind::io, "write failed on " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

void write_json(const nlohmann::json& doc, const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + dir + ": " + ec.message());
  std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  out.close();
  if (out.fail()) throw Error(ErrorKind::io, "write failed on " + path);
}

// Non-finite numbers become null in JSON.
nlohmann::json jnum(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json params_json(const Problem& p) {
  return {{"epsilon", p.params.epsilon}, {"nu", p.params.nu},   {"ell0", p.params.ell0},
          {"t_end", p.params.t_end},     {"ds", p.params.ds},   {"x_max", p.params.x_max},
          {"toughness", p.toughness.to_json()}, {"loading", p.loading.to_json()}};
}

}  // namespace

nlohmann::json to_json(const RunReport& run) {
  const auto& en = run.energy;
  nlohmann::json j;
  j["params"] = params_json(run.problem);
  j["steps"] = run.field.steps();
  j["ell_final"] = run.field.ell.back();
  j["E_final"] = en.E.back();
  j["A_final"] = en.A.back();
  j["W_final"] = en.W.back();
  j["Etilde_final"] = en.Etilde.back();
  j["balance"] = {{"max_abs", jnum(run.balance.max_abs)}, {"max_relative", jnum(run.balance.max_relative)}};
  j["griffith"] = {{"min_slope", run.griffith.min_slope},
                   {"max_slope", run.griffith.max_slope},
                   {"max_stability", run.griffith.max_stability},
                   {"max_complementarity", run.griffith.max_complementarity},
                   {"max_complementarity_scaled", run.griffith.max_complementarity_scaled}};
  j["decay"] = {{"applicable", run.decay.applicable},
                {"L_T", run.decay.L_T},
                {"mu0", run.decay.constants.mu0},
                {"mu1", run.decay.constants.mu1},
                {"m", run.decay.constants.m},
                {"empirical_C_T", jnum(run.decay.empirical_C_T)}};
  return j;
}

void write_run(const RunReport& run, const std::string& dir, bool dump_field) {
  const auto& F = run.field;
  const auto& en = run.energy;
  {
    Csv csv(dir, "timeseries.csv", {"t", "ell", "ell_dot", "G0", "E", "A", "W", "Etilde", "balance_residual"});
    for (std::size_t k = 0; k < F.steps(); ++k) {
      double g0 = k < run.G0.size() ? run.G0[k] : NAN;
      csv.row({F.t[k], F.ell[k], F.ell_dot[k], g0, en.E[k], en.A[k], en.W[k], en.Etilde[k], run.balance.raw[k]});
    }
  }
  if (dump_field) {
    Csv csv(dir, "field.csv", {"t", "x", "u", "u_t", "u_x"});
    for (std::size_t k = 0; k < F.steps(); ++k)
      for (std::size_t j = 0; j < F.u[k].size(); ++j)
        csv.row({F.t[k], static_cast<double>(j) * F.dx, F.u[k][j], F.ut[k][j], F.ux[k][j]});
  }
  write_json(to_json(run), dir, "summary.json");
}

nlohmann::json quasistatic_summary(const QuasistaticEvolution& ev) {
  QuasistaticGriffith g = verify_quasistatic_griffith(ev);
  std::vector<double> bal = verify_energy_balance_qs(ev);
  double bal_max = 0.0;
  for (double v : bal) bal_max = std::max(bal_max, std::abs(v));
  nlohmann::json jumps = nlohmann::json::array();
  for (std::size_t k : detect_jumps(ev)) jumps.push_back({{"t", ev.t[k]}, {"from", ev.lambda[k - 1]}, {"to", ev.lambda[k]}});
  nlohmann::json j = {{"start", ev.start},
                      {"lambda_final", ev.lambda.back()},
                      {"max_negative_slope", g.max_negative_slope},
                      {"max_stability", g.max_stability},
                      {"max_complementarity", g.max_complementarity},
                      {"energy_balance_max_abs", bal_max},
                      {"jumps", jumps}};
  double step = ev.t.size() > 1 ? ev.t[1] - ev.t[0] : 0.0;
  if (ev.toughness.conditions(ev.loading, ev.t.back(), step).K1) {
    GlobalStability gs = verify_global_stability(ev, 50, 200);
    j["global_stability_min_gap"] = gs.min_gap;
  } else {
    j["global_stability_min_gap"] = nullptr;
  }
  return j;
}

void write_quasistatic(const QuasistaticEvolution& ev, const std::string& dir) {
  QuasistaticGriffith g = verify_quasistatic_griffith(ev);
  {
    Csv csv(dir, "quasistatic.csv", {"t", "lambda", "w", "stability_residual", "complementarity_residual"});
    for (std::size_t k = 0; k < ev.t.size(); ++k)
      csv.row({ev.t[k], ev.lambda[k], ev.w[k], g.stability[k], g.complementarity[k]});
  }
  write_json(quasistatic_summary(ev), dir, "quasistatic.json");
}

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"eps", e.eps},
                       {"ds", e.ds},
                       {"front_error", e.front_error},
                       {"front_error_rel", e.front_error_rel},
                       {"trace_error", e.trace_error},
                       {"kinetic_max", e.kinetic_max},
                       {"kinetic_final", e.kinetic_final},
                       {"etilde_max", e.etilde_max},
                       {"energy_bound", e.energy_bound},
                       {"max_increment", e.max_increment},
                       {"ell_at_t_min", e.ell_at_t_min},
                       {"balance_max_relative", e.balance_max_relative},
                       {"decay_m", e.decay_m},
                       {"decay_C_T", jnum(e.decay_C_T)},
                       {"runtime_seconds", e.runtime_seconds}});
  nlohmann::json j = {{"start", r.start},
                      {"t_min", r.t_min},
                      {"t_end", r.t_end},
                      {"nu", r.nu},
                      {"entries", entries},
                      {"front_monotone", r.front_monotone},
                      {"trace_monotone", r.trace_monotone},
                      {"kinetic_monotone", r.kinetic_monotone},
                      {"continuity_monotone", r.continuity_monotone},
                      {"energy_bound_stable", r.energy_bound_stable}};
  return j;
}

void write_sweep(const SweepReport& r, const std::string& dir) {
  {
    Csv csv(dir, "sweep.csv",
            {"eps", "ds", "front_error", "front_error_rel", "trace_error", "kinetic_max", "kinetic_final",
             "etilde_max", "energy_bound", "max_increment", "ell_at_t_min", "balance_max_relative"});
    for (const auto& e : r.entries)
      csv.row({e.eps, e.ds, e.front_error, e.front_error_rel, e.trace_error, e.kinetic_max, e.kinetic_final,
               e.etilde_max, e.energy_bound, e.max_increment, e.ell_at_t_min, e.balance_max_relative});
  }
  {
    Csv csv(dir, "fronts.csv", {"eps", "t", "ell", "lambda"});
    for (const auto& e : r.entries)
      for (std::size_t k = 0; k < e.t.size(); ++k) csv.row({e.eps, e.t[k], e.ell[k], e.lambda[k]});
  }
  {
    Csv csv(dir, "energy.csv", {"eps", "t", "E", "A", "W", "Etilde", "kinetic"});
    for (const auto& e : r.entries)
      for (std::size_t k = 0; k < e.t.size(); ++k)
        csv.row({e.eps, e.t[k], e.E[k], e.A[k], e.W[k], e.Etilde[k], e.kinetic[k]});
  }
  write_json(to_json(r), dir, "sweep.json");
}

nlohmann::json to_json(const JumpReport& r) {
  return {{"ell1", r.ell1},
          {"plateau_time", r.plateau_time},
          {"plateaued", r.plateaued},
          {"w0", r.w0},
          {"stability_bound", r.stability_bound},
          {"stability_slack", r.stability_slack},
          {"stable", r.stable},
          {"E_T", r.E_T},
          {"limit_energy_error", r.limit_energy_error},
          {"energy_gap", r.energy_gap},
          {"dissipated", r.dissipated},
          {"gap_relative_error", jnum(r.gap_relative_error)},
          {"sweep_eps", r.sweep_eps},
          {"sweep_ell_t_min", r.sweep_ell_t_min},
          {"ell_plus_estimate", r.ell_plus_estimate},
          {"ell_plus_relative_error", r.ell_plus_relative_error}};
}

void write_jump(const JumpReport& r, const std::string& dir) {
  {
    Csv csv(dir, "jump.csv", {"t", "ell", "E", "A"});
    for (std::size_t k = 0; k < r.t.size(); ++k) csv.row({r.t[k], r.ell[k], r.E[k], r.A[k]});
  }
  if (!r.sweep_eps.empty()) {
    Csv csv(dir, "jump_sweep.csv", {"eps", "ell_t_min"});
    for (std::size_t i = 0; i < r.sweep_eps.size(); ++i) csv.row({r.sweep_eps[i], r.sweep_ell_t_min[i]});
  }
  write_json(to_json(r), dir, "jump.json");
}

void write_verify(const VerifyReport& r, const std::string& dir) {
  write_json({{"pass", r.pass}, {"checks", r.checks}}, dir, "verify.json");
}

nlohmann::json to_json(const OracleReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"ds", row.ds},
                    {"front", row.front},
                    {"field", row.field},
                    {"front_ratio", row.front_ratio},
                    {"field_ratio", row.field_ratio}});
  return {{"pass", r.pass}, {"rows", rows}};
}

void write_oracle(const OracleReport& r, const std::string& dir) {
  {
    Csv csv(dir, "oracle.csv", {"ds", "front", "field", "front_ratio", "field_ratio"});
    for (const auto& row : r.rows) csv.row({row.ds, row.front, row.field, row.front_ratio, row.field_ratio});
  }
  write_json(to_json(r), dir, "oracle.json");
}

}  // namespace debond
