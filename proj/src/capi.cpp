#include "debond/debond.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "debond/experiments.hpp"

struct debond_problem {
  debond::Problem p;
};

struct debond_run {
  std::unique_ptr<debond::CoupledSolver> solver;
};

namespace {

thread_local std::string last_error = "{}";

debond_status fail(debond_status code, const std::string& kind, const std::string& message,
                   const std::string& pointer = {}) {
  last_error = nlohmann::json{{"error", kind}, {"message", message}, {"pointer", pointer}}.dump();
  return code;
}

debond_status status_of(const debond::Error& e) {
  if (e.kind() == debond::ErrorKind::io) return DEBOND_ERR_IO;
  return e.is_input_error() ? DEBOND_ERR_VALIDATION : DEBOND_ERR_NUMERICAL;
}

template <class Body>
debond_status guarded(Body&& body) {
  try {
    body();
    last_error = "{}";
    return DEBOND_OK;
  } catch (const debond::Error& e) {
    return fail(status_of(e), debond::to_string(e.kind()), e.what(), e.pointer());
  } catch (const nlohmann::json::exception& e) {
    return fail(DEBOND_ERR_VALIDATION, "validation", e.what());
  } catch (const std::bad_alloc&) {
    return fail(DEBOND_ERR_NUMERICAL, "out_of_memory", "allocation failed");
  } catch (const std::exception& e) {
    return fail(DEBOND_ERR_NUMERICAL, "internal", e.what());
  }
}

debond_status null_argument(const char* name) {
  return fail(DEBOND_ERR_ARGUMENT, "argument", std::string(name) + " must not be null");
}

void emit(const nlohmann::json& doc, char** summary) {
  if (!summary) return;
  std::string s = doc.dump(2);
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  *summary = out;
}

}  // namespace

extern "C" {

const char* debond_last_error(void) { return last_error.c_str(); }

debond_status debond_problem_from_json(const char* text, debond_problem** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw debond::Error(debond::ErrorKind::validation, std::string("malformed JSON: ") + e.what(), "");
    }
    *out = new debond_problem{debond::parse_problem(doc)};
  });
}

debond_status debond_problem_from_file(const char* path, debond_problem** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new debond_problem{debond::load_problem_file(path)}; });
}

debond_status debond_problem_set_epsilon(debond_problem* problem, double epsilon, double ds) {
  if (!problem) return null_argument("problem");
  return guarded([&] { problem->p = problem->p.with_epsilon(epsilon, ds); });
}

void debond_problem_free(debond_problem* problem) { delete problem; }

debond_status debond_run_create(const debond_problem* problem, debond_run** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new debond_run{std::make_unique<debond::CoupledSolver>(problem->p)}; });
}

debond_status debond_run_advance(debond_run* run, double t) {
  if (!run) return null_argument("run");
  return guarded([&] { run->solver->advance_to(t); });
}

double debond_run_time(const debond_run* run) { return run ? run->solver->time() : 0.0; }

debond_status debond_run_front(const debond_run* run, double t, double* ell) {
  if (!run) return null_argument("run");
  if (!ell) return null_argument("ell");
  return guarded([&] {
    if (!(t >= 0.0 && t <= run->solver->time()))
      throw debond::Error(debond::ErrorKind::range, "time outside the computed front");
    *ell = run->solver->front()(t);
  });
}

debond_status debond_run_knots(const debond_run* run, double* values, size_t capacity, size_t* count) {
  if (!run) return null_argument("run");
  if (!count) return null_argument("count");
  if (capacity > 0 && !values) return null_argument("values");
  const auto& v = run->solver->front().values();
  *count = v.size();
  std::copy_n(v.begin(), std::min(capacity, v.size()), values);
  last_error = "{}";
  return DEBOND_OK;
}

void debond_run_free(debond_run* run) { delete run; }

debond_status debond_simulate(const debond_problem* problem, const char* out_dir, int dump_field,
                              char** summary) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    debond::RunReport r = debond::simulate(problem->p);
    debond::write_run(r, out_dir, dump_field != 0);
    emit(debond::to_json(r), summary);
  });
}

debond_status debond_quasistatic(const debond_problem* problem, const char* out_dir, char** summary) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    const auto& p = problem->p;
    auto grid = debond::uniform_grid(p.params.t_end, p.params.ds);
    double start = p.params.ell0;
    if (p.source.contains("quasistatic")) {
      const auto& q = p.source.at("quasistatic");
      if (q.contains("start")) {
        if (!q.at("start").is_number())
          throw debond::Error(debond::ErrorKind::validation, "expected a number", "/quasistatic/start");
        start = q.at("start").get<double>();
      }
    }
    auto ev = debond::quasistatic_front(p.toughness, p.loading, grid, start);
    debond::write_quasistatic(ev, out_dir);
    emit(debond::quasistatic_summary(ev), summary);
  });
}

debond_status debond_sweep(const debond_problem* problem, const double* eps, size_t n_eps, const char* out_dir,
                           char** summary) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  if (n_eps > 0 && !eps) return null_argument("eps");
  return guarded([&] {
    auto opt = debond::SweepOptions::from_json(problem->p.source);
    if (n_eps > 0) opt.eps.assign(eps, eps + n_eps);
    auto r = debond::epsilon_sweep(problem->p, opt);
    debond::write_sweep(r, out_dir);
    emit(debond::to_json(r), summary);
  });
}

debond_status debond_jump(const debond_problem* problem, const char* out_dir, char** summary) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    auto r = debond::initial_jump(problem->p, debond::JumpOptions::from_json(problem->p.source));
    debond::write_jump(r, out_dir);
    emit(debond::to_json(r), summary);
  });
}

debond_status debond_verify(const debond_problem* problem, uint64_t seed, const char* out_dir, char** summary,
                            int* passed) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    auto r = debond::verify_run(problem->p, seed);
    debond::write_verify(r, out_dir);
    if (passed) *passed = r.pass ? 1 : 0;
    emit({{"pass", r.pass}, {"checks", r.checks}}, summary);
  });
}

debond_status debond_oracle(const debond_problem* problem, const char* out_dir, char** summary, int* passed) {
  if (!problem) return null_argument("problem");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    double ds = problem->p.params.ds;
    auto r = debond::oracle_compare(problem->p, {ds, ds / 2, ds / 4});
    debond::write_oracle(r, out_dir);
    if (passed) *passed = r.pass ? 1 : 0;
    emit(debond::to_json(r), summary);
  });
}

void debond_string_free(char* text) { std::free(text); }

}  // extern "C"
