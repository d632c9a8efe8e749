#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

using alr::cli::GlobalOptions;

struct SolveArgs {
  std::string config;
  std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, SolveArgs& args, bool config_required) {
  auto* config = cmd->add_option("config", args.config, "key = value configuration file");
  if (config_required) config->required()->check(CLI::ExistingFile);
  cmd->add_option("--set", args.overrides, "override a config key (key=value, repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for two plasmonic transmission problems"};
  app.require_subcommand(1);

  GlobalOptions opt;
  std::string out = "out";
  app.add_option("--out", out, "output directory (default: out)");
  app.add_flag("--strict", opt.strict, "unreliable fits become a nonzero exit");
  app.add_option("--threads", opt.threads, "worker threads across delta values (0 = auto)");
  app.add_flag("--render", opt.render, "also write PPM heat maps of |u|");

  app.add_subcommand("figure1", "core-shell fields at delta = 1e-14, 1e-18, 1e-20");
  app.add_subcommand("figure2", "source-problem fields at three deltas near 1e-10");

  SolveArgs solve1_args, solve2_args, rate_args, compat_args;
  auto* solve1 = app.add_subcommand("solve1", "solve the core-shell problem from a config");
  add_config_options(solve1, solve1_args, true);
  auto* solve2 = app.add_subcommand("solve2", "solve the whole-plane source problem from a config");
  add_config_options(solve2, solve2_args, true);

  int rate_problem = 1;
  double delta_min = 1e-8, delta_max = 1e-2;
  int rate_points = 13;
  auto* rate = app.add_subcommand("rate", "fit log-log decay rates across a delta window");
  rate->add_option("problem", rate_problem, "1 (core-shell) or 2 (source)")
      ->required()
      ->check(CLI::Range(1, 2));
  add_config_options(rate, rate_args, false);
  rate->add_option("--delta-min", delta_min, "smallest delta (default 1e-8)");
  rate->add_option("--delta-max", delta_max, "largest delta (default 1e-2)");
  rate->add_option("--points", rate_points, "fit points, at least 4 (default 13)");

  int compat_problem = 1;
  auto* compat = app.add_subcommand("check-compat", "classify data compatibility");
  compat->add_option("problem", compat_problem, "1 (core-shell) or 2 (source)")
      ->required()
      ->check(CLI::Range(1, 2));
  add_config_options(compat, compat_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : alr::cli::kExitUsage;
  }
  opt.out = out;

  try {
    if (app.got_subcommand("figure1")) return alr::cli::cmd_figure1(opt);
    if (app.got_subcommand("figure2")) return alr::cli::cmd_figure2(opt);
    if (app.got_subcommand("solve1")) {
      return alr::cli::cmd_solve1(opt, solve1_args.config, solve1_args.overrides);
    }
    if (app.got_subcommand("solve2")) {
      return alr::cli::cmd_solve2(opt, solve2_args.config, solve2_args.overrides);
    }
    if (app.got_subcommand("rate")) {
      return alr::cli::cmd_rate(opt, rate_problem, rate_args.config, rate_args.overrides,
                                delta_min, delta_max, rate_points);
    }
    if (app.got_subcommand("check-compat")) {
      return alr::cli::cmd_check_compat(opt, compat_problem, compat_args.config,
                                        compat_args.overrides);
    }
  } catch (const alr::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return alr::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return alr::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return alr::cli::kExitRuntime;
  }
  return alr::cli::kExitUsage;
}
