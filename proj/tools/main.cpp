// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "marcinlab/experiments.hpp"
#include "marcinlab/csv.hpp"

namespace {

using marcinlab::cli::RunContext;

struct CommandInfo {
  const char* name;
  const char* help;
  int (*runner)(RunContext&);
  // long option names accepted by this command (value options, string form)
  std::vector<const char*> options;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table = {
      {"h-estimate",
       "Estimate a maximal-operator constant for a matrix file",
       marcinlab::cli::run_h_estimate,
       {"matrix", "mode", "p", "q", "restarts", "alternations", "iters", "tol", "bv-upper",
        "trivial-upper", "weight-kind", "weight-theta", "weight-length", "truncate-from",
        "truncate-to"}},
      {"oracle-check",
       "Compare the estimator with the exhaustive selector oracle",
       marcinlab::cli::run_oracle_check,
       {"trials", "levels", "rows-max", "cols-max", "quality-tol", "restarts", "iters", "tol",
        "alternations"}},
      {"counterexample",
       "Sign-matrix growth family evaluated at the Rademacher witness",
       marcinlab::cli::run_counterexample,
       {"n-min", "n-max", "theta"}},
      {"band-bound",
       "Banded log-weight matrices: estimates against certified bounds",
       marcinlab::cli::run_band_bound,
       {"size-min", "size-max", "theta", "kind", "restarts", "alternations", "iters", "tol"}},
      {"lorentz",
       "Weight-sequence diagnostics for the two decay conditions",
       marcinlab::cli::run_lorentz,
       {"kind", "theta", "horizon", "values"}},
      {"lp-decay",
       "Cell-average vs band-filter composition norms",
       marcinlab::cli::run_lp_decay,
       {"grid", "base", "max-offset", "iters"}},
      {"vr-decay",
       "Aligned band/cell sums and their detuning decay",
       marcinlab::cli::run_vr_decay,
       {"grid", "max-shift", "adjoint", "iters"}},
      {"bilinear-apply",
       "Apply a frequency-pair multiplier to two grid functions",
       marcinlab::cli::run_bilinear_apply,
       {"grid", "symbol-file", "family", "theta", "n", "f", "g", "reference"}},
      {"equivalence",
       "Triangle functional vs bilinear certificate across a family",
       marcinlab::cli::run_equivalence,
       {"family", "theta", "n-min", "n-max", "bands", "scales", "grid", "p1", "p2",
        "mult-restarts", "sweeps", "inner", "mult-tol", "restarts", "alternations", "iters",
        "tol"}},
      {"resynth",
       "Windowed lattice expansion of a smooth symbol and its error curve",
       marcinlab::cli::run_resynth,
       {"theta", "cutoffs", "quadrature", "band-low", "band-high", "samples", "dump-table"}},
      {"paraproduct",
       "Paraproduct path cross-check and summand spectrum confinement",
       marcinlab::cli::run_paraproduct,
       {"grid", "side"}},
      {"symbol-h",
       "Sampled triangle functional of a symbol over dyadic scales",
       marcinlab::cli::run_symbol_h,
       {"family", "theta", "n", "grid", "symbol-file", "scale-ranges", "samples", "deriv-order",
        "restarts", "iters", "tol"}},
  };
  return table;
}

// Thread cap from the environment; execution is single-threaded, so any
// nonnegative cap is honored trivially. Invalid values are an argument error.
int read_thread_cap() {
  const char* raw = std::getenv("MARCIN_LAB_THREADS");
  if (!raw) return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0) {
    throw std::invalid_argument("MARCIN_LAB_THREADS must be a nonnegative integer");
  }
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"marcinlab: dyadic martingale maximal constants and bilinear multipliers"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::string config_path;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "deterministic seed")->capture_default_str();
  app.add_option("--config", config_path, "JSON file with default parameter values");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const CommandInfo& info : commands()) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->fallthrough();  // global flags may trail the command
    subs[info.name] = sub;
    for (const char* opt : info.options) {
      sub->add_option(std::string("--") + opt, values[info.name][opt])
          ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : marcinlab::cli::kBadArguments;
  }

  RunContext ctx;
  ctx.out_dir = out_dir;
  ctx.format = format;
  ctx.seed = seed;

  const CommandInfo* chosen = nullptr;
  for (const CommandInfo& info : commands()) {
    if (subs[info.name]->parsed()) chosen = &info;
  }
  if (!chosen) {
    std::cerr << "no command selected\n";
    return marcinlab::cli::kBadArguments;
  }
  ctx.command = chosen->name;

  int status = marcinlab::cli::kOk;
  std::string error;
  try {
    read_thread_cap();

    // config file supplies defaults; explicit flags override
    if (!config_path.empty()) {
      const auto config = nlohmann::json::parse(marcinlab::read_text_file(config_path));
      for (auto it = config.begin(); it != config.end(); ++it) {
        const std::string key = it.key();
        auto& slot = values[ctx.command];
        if (slot.count(key) == 0) continue;  // keys for other commands are ignored
        if (!slot[key].empty()) continue;    // flag was set explicitly
        slot[key] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
      }
    }
    for (const auto& [key, value] : values[ctx.command]) {
      if (!value.empty()) ctx.parameters[key] = value;
    }

    std::filesystem::create_directories(ctx.out_dir);
    status = chosen->runner(ctx);
  } catch (const std::invalid_argument& e) {
    status = marcinlab::cli::kBadArguments;
    error = e.what();
  } catch (const std::length_error& e) {
    status = marcinlab::cli::kBadArguments;
    error = e.what();
  } catch (const std::out_of_range& e) {
    status = marcinlab::cli::kBadArguments;
    error = e.what();
  } catch (const nlohmann::json::exception& e) {
    status = marcinlab::cli::kIoFailure;
    error = e.what();
  } catch (const std::runtime_error& e) {
    status = marcinlab::cli::kIoFailure;
    error = e.what();
  }

  try {
    marcinlab::cli::write_manifest(ctx, status, error);
  } catch (const std::exception& e) {
    std::cerr << "manifest write failed: " << e.what() << "\n";
    if (status == marcinlab::cli::kOk) status = marcinlab::cli::kIoFailure;
  }
  if (!error.empty()) std::cerr << ctx.command << ": " << error << "\n";
  return status;
}
