// Command-line front end over the C interface.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "debond/debond.h"

namespace {

struct Args {
  std::string config;
  std::string out;
  bool dump_field = false;
  std::vector<double> eps;
  std::uint64_t seed = 0;
};

std::string output_dir(const Args& a) {
  if (!a.out.empty()) return a.out;
  if (const char* env = std::getenv("DEBOND_OUT"); env && *env) return env;
  return "debond_out";
}

int exit_code(debond_status s) {
  switch (s) {
    case DEBOND_OK: return 0;
    case DEBOND_ERR_NUMERICAL: return 2;
    default: return 1;
  }
}

int report(debond_status s, char* summary) {
  if (s != DEBOND_OK) {
    std::fprintf(stderr, "%s\n", debond_last_error());
    return exit_code(s);
  }
  if (summary) std::printf("%s\n", summary);
  debond_string_free(summary);
  return 0;
}

int run(const std::string& command, const Args& a) {
  debond_problem* p = nullptr;
  debond_status s = debond_problem_from_file(a.config.c_str(), &p);
  if (s != DEBOND_OK) return report(s, nullptr);
  const std::string dir = output_dir(a);
  char* summary = nullptr;
  int passed = 1;
  if (command == "simulate")
    s = debond_simulate(p, dir.c_str(), a.dump_field ? 1 : 0, &summary);
  else if (command == "quasistatic")
    s = debond_quasistatic(p, dir.c_str(), &summary);
  else if (command == "sweep")
    s = debond_sweep(p, a.eps.empty() ? nullptr : a.eps.data(), a.eps.size(), dir.c_str(), &summary);
  else if (command == "jump")
    s = debond_jump(p, dir.c_str(), &summary);
  else if (command == "verify")
    s = debond_verify(p, a.seed, dir.c_str(), &summary, &passed);
  else if (command == "oracle")
    s = debond_oracle(p, dir.c_str(), &summary, &passed);
  debond_problem_free(p);
  int code = report(s, summary);
  // A completed check run that found violations is a numerical failure.
  if (code == 0 && !passed) {
    std::fprintf(stderr, "{\"error\":\"invariant_violation\",\"message\":\"%s checks failed\",\"pointer\":\"\"}\n",
                 command.c_str());
    return 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-film debonding simulator"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", a.config, "problem JSON file")->required();
    sub->add_option("--out", a.out, "output directory (else $DEBOND_OUT, else ./debond_out)");
  };
  auto* simulate = app.add_subcommand("simulate", "one dynamic run with energy diagnostics");
  common(simulate);
  simulate->add_flag("--dump-field", a.dump_field, "also write field.csv");
  common(app.add_subcommand("quasistatic", "closed-form quasistatic evolution"));
  auto* sweep = app.add_subcommand("sweep", "epsilon sweep against the quasistatic limit");
  common(sweep);
  sweep->add_option("--eps", a.eps, "comma-separated epsilon list, strictly decreasing")->delimiter(',');
  common(app.add_subcommand("jump", "initial-jump experiment"));
  auto* verify = app.add_subcommand("verify", "identity and invariant checks on one run");
  common(verify);
  verify->add_option("--seed", a.seed, "seed for the random-point checks");
  common(app.add_subcommand("oracle", "finite-difference cross-check under refinement"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    nlohmann::json err{{"error", "argument"}, {"message", e.what()}, {"pointer", ""}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
  return run(app.get_subcommands().front()->get_name(), a);
}
