// Command-line front end: evaluate one spec, sweep a shrinking shell,
// run the two-sided limit check, or emit the deterministic selftest
// battery. All numeric work lives in the skewlab library; this file only
// maps config/flags onto library calls and exceptions onto exit codes:
//   2  config file missing, unparseable, or lacking a required key
//   3  invalid model spec or evaluation point (the message names bounds)
//   4  schedule violates the vanishing-condition requirement
//   1  anything else (I/O, numerical failure inside the library)
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewlab/config.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/function_catalog.hpp"
#include "skewlab/model.hpp"
#include "skewlab/report.hpp"
#include "skewlab/sweep.hpp"

namespace {

using namespace skewlab;

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool seed_given = false;
};

Config require_config(const GlobalOptions& global) {
  if (global.config_path.empty()) {
    throw ConfigError("no config file given (use --config PATH)");
  }
  return Config::load(global.config_path);
}

// CLI --seed wins over the config's mc.seed; the default is 1.
std::uint64_t effective_seed(const GlobalOptions& global, const Config& config) {
  if (global.seed_given) return global.seed;
  return static_cast<std::uint64_t>(config.get_int("mc.seed", 1));
}

std::vector<double> points_from(const std::vector<double>& cli_xs, const Config& config) {
  if (!cli_xs.empty()) return cli_xs;
  if (config.has("x")) return config.get_double_list("x");
  throw ConfigError("no evaluation points: pass --x or set 'x' in the config");
}

// Report body goes to stdout when no --out is given; with --out the file
// is written atomically and stdout stays empty (the path is logged on
// stderr). Diagnostics never mix into the report stream.
void emit(const Report& report, const GlobalOptions& global, const std::string& name,
          ReportMetadata meta) {
  meta.tool = "skewlab " + name;
  if (global.format == "json") meta.timestamp = iso8601_now();
  if (global.out_dir.empty()) {
    if (global.format == "json") {
      std::fputs(report.to_json(meta).c_str(), stdout);
    } else {
      std::fputs(report.to_csv().c_str(), stdout);
    }
    return;
  }
  std::filesystem::path dir(global.out_dir);
  std::filesystem::create_directories(dir);
  std::filesystem::path path = dir / (name + (global.format == "json" ? ".json" : ".csv"));
  if (global.format == "json") {
    report.write_json(path, meta);
  } else {
    report.write_csv(path);
  }
  std::fprintf(stderr, "wrote %s\n", path.string().c_str());
}

int run_eval_command(const GlobalOptions& global, const std::vector<double>& cli_xs,
                     bool with_fd, std::int64_t cli_paths, double cli_h) {
  Config config = require_config(global);
  ModelSpec spec = model_from_config(config);
  std::vector<double> xs = points_from(cli_xs, config);

  EvalOptions opt;
  opt.f = FunctionSpec::parse(config.get_string("f", "one"), spec.geometry.ell);
  opt.with_fd = with_fd;
  opt.fd_h = config.get_double("fd.h", 1e-3);
  opt.mc_paths = static_cast<std::uint64_t>(
      cli_paths >= 0 ? cli_paths : config.get_int("mc.n_paths", 0));
  opt.mc_h = cli_h > 0 ? cli_h : config.get_double("mc.h", 2e-3);
  opt.seed = effective_seed(global, config);

  Report report = run_eval(spec, xs, opt);
  ReportMetadata meta;
  meta.entries["seed"] = std::to_string(opt.seed);
  meta.entries["f"] = opt.f.name();
  emit(report, global, "eval", std::move(meta));
  return 0;
}

int run_sweep_command(const GlobalOptions& global, const std::vector<double>& cli_xs,
                      bool with_fd, std::int64_t cli_paths, double cli_h) {
  Config config = require_config(global);

  SweepRequest req;
  req.kind = model_kind_from_string(config.get_string("kind"));
  req.l = config.get_double("l", 0.0);
  req.ell = config.get_double("ell", 1.0);
  req.schedule = schedule_from_config(config);
  req.eps0 = config.get_double("sweep.eps0", 0.2);
  req.k_count = static_cast<int>(config.get_int("sweep.k", 9));
  req.xs = points_from(cli_xs, config);
  req.with_fd = with_fd;
  req.fd_h = config.get_double("fd.h", 1e-3);
  req.mc_paths = static_cast<std::uint64_t>(
      cli_paths >= 0 ? cli_paths : config.get_int("mc.n_paths", 0));
  req.mc_h = cli_h > 0 ? cli_h : config.get_double("mc.h", 2e-3);
  req.seed = effective_seed(global, config);

  Report report = run_sweep(req);
  ReportMetadata meta;
  meta.entries["seed"] = std::to_string(req.seed);
  meta.entries["eps0"] = format_double(req.eps0);
  meta.entries["k"] = std::to_string(req.k_count);
  emit(report, global, "sweep", std::move(meta));
  return 0;
}

int run_theorem_command(const GlobalOptions& global, const std::vector<double>& cli_xs,
                        std::int64_t cli_paths, double cli_h) {
  Config config = require_config(global);

  Schedule schedule = schedule_from_config(config);
  Regime regime = classify_regime(schedule);  // rejects before any heavy work

  ModelSpec spec;
  spec.kind = model_kind_from_string(config.get_string("kind"));
  spec.geometry.l = config.get_double("l", 0.0);
  spec.geometry.ell = config.get_double("ell", 1.0);
  spec.geometry.eps = config.get_double("eps");
  spec.params.alpha = schedule.alpha_at(spec.geometry.eps);
  spec.params.lambda = schedule.lambda_at(spec.geometry.eps);
  spec = validate(spec);

  std::vector<double> xs = points_from(cli_xs, config);
  FunctionSpec f = FunctionSpec::parse(config.get_string("f", "one"), spec.geometry.ell);
  std::uint64_t n_paths = static_cast<std::uint64_t>(
      cli_paths >= 0 ? cli_paths : config.get_int("mc.n_paths", 20000));
  double h = cli_h > 0 ? cli_h : config.get_double("mc.h", 2e-3);
  std::uint64_t seed = effective_seed(global, config);

  std::vector<TheoremSidePair> pairs =
      verify_limit_theorem(spec, regime, f, xs, n_paths, h, seed);
  double max_z = 0.0;
  for (const TheoremSidePair& pair : pairs) {
    max_z = std::max(max_z, pair.z());
    std::fprintf(stderr,
                 "x=%s  model=%s (se %s)  limit=%s (se %s)  z=%.3f\n",
                 format_double(pair.x).c_str(),
                 format_double(pair.model_side.mean).c_str(),
                 format_double(pair.model_side.std_error).c_str(),
                 format_double(pair.limit_side.mean).c_str(),
                 format_double(pair.limit_side.std_error).c_str(), pair.z());
  }
  std::fprintf(stderr, "regime=%s  n_paths=%llu  h=%s  max|z|=%.3f\n",
               to_string(regime.kind),
               static_cast<unsigned long long>(n_paths), format_double(h).c_str(), max_z);

  Report report = theorem_report(spec, regime, f, pairs);
  ReportMetadata meta;
  meta.entries["seed"] = std::to_string(seed);
  meta.entries["n_paths"] = std::to_string(n_paths);
  meta.entries["h"] = format_double(h);
  meta.entries["regime"] = to_string(regime.kind);
  emit(report, global, "verify-theorem1", std::move(meta));
  return 0;
}

int run_selftest_command(const GlobalOptions& global) {
  std::uint64_t seed = global.seed_given ? global.seed : 1;
  if (!global.config_path.empty()) {
    Config config = Config::load(global.config_path);
    seed = effective_seed(global, config);
  }
  Report report = run_selftest(seed);
  ReportMetadata meta;
  meta.entries["seed"] = std::to_string(seed);
  emit(report, global, "selftest", std::move(meta));
  return 0;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return 2;
  if (dynamic_cast<const InadmissibleSchedule*>(&error)) return 4;
  if (dynamic_cast<const QuadratureFailure*>(&error)) return 1;
  if (dynamic_cast<const SingularSystem*>(&error)) return 1;
  if (dynamic_cast<const Error*>(&error)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-diffusion laboratory: closed forms, Monte Carlo, and oracles"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--config", global.config_path, "config file (key = value lines)");
  CLI::Option* seed_opt = app.add_option("--seed", global.seed, "random seed (wins over mc.seed)");
  app.add_option("--out", global.out_dir, "output directory; omit to print to stdout");
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<double> cli_xs;
  std::string oracle;
  std::int64_t cli_paths = -1;  // -1: defer to config
  double cli_h = 0.0;           // 0: defer to config

  CLI::App* eval = app.add_subcommand(
      "eval", "closed-form exit quantities at given points, with optional cross-checks");
  eval->add_option("--x", cli_xs, "evaluation points");
  eval->add_option("--oracle", oracle, "add an independent oracle column")
      ->check(CLI::IsMember({"fd"}));
  eval->add_option("--paths", cli_paths, "Monte Carlo paths (0 disables)");
  eval->add_option("--step", cli_h, "Monte Carlo grid step");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "shrinking-shell sweep along a power-family schedule");
  sweep->add_option("--x", cli_xs, "evaluation points");
  sweep->add_option("--oracle", oracle, "add an independent oracle column")
      ->check(CLI::IsMember({"fd"}));
  sweep->add_option("--paths", cli_paths, "Monte Carlo paths (0 disables)");
  sweep->add_option("--step", cli_h, "Monte Carlo grid step");

  CLI::App* theorem = app.add_subcommand(
      "verify-theorem1", "two-sided Monte Carlo check of the killing limit");
  theorem->add_option("--x", cli_xs, "evaluation points");
  theorem->add_option("--paths", cli_paths, "Monte Carlo paths per side");
  theorem->add_option("--step", cli_h, "grid step for both chains");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "deterministic battery; same seed gives byte-identical CSV");

  CLI11_PARSE(app, argc, argv);
  global.seed_given = seed_opt->count() > 0;

  try {
    if (eval->parsed()) {
      return run_eval_command(global, cli_xs, oracle == "fd", cli_paths, cli_h);
    }
    if (sweep->parsed()) {
      return run_sweep_command(global, cli_xs, oracle == "fd", cli_paths, cli_h);
    }
    if (theorem->parsed()) {
      return run_theorem_command(global, cli_xs, cli_paths, cli_h);
    }
    if (selftest->parsed()) {
      return run_selftest_command(global);
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return exit_code_for(error);
  }
  return 0;
}
