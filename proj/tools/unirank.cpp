// Command-line driver: validate, rank, quadrant, compare.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unirank/config.hpp"
#include "unirank/error.hpp"
#include "unirank/pipeline.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::vector<std::string> windows;
  std::string out_dir;
  std::size_t min_n = 0;
  std::string q1_policy;
  bool strict_quartiles = false;
  std::size_t jobs = 1;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->required();
  cmd->add_option("--window", o.windows, "Time window START:END (repeatable, replaces config windows)");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--min-n", o.min_n, "Minimum institutions for reporting rho")->check(CLI::PositiveNumber);
  cmd->add_option("--q1-policy", o.q1_policy, "First-quartile rule")
      ->check(CLI::IsMember({"any-relevant", "best-all"}));
  cmd->add_flag("--strict-quartiles", o.strict_quartiles, "Fail on missing journal quartiles");
  cmd->add_option("--jobs", o.jobs, "Fields processed concurrently")->check(CLI::PositiveNumber);
}

unirank::RunConfig resolve(const Overrides& o) {
  auto config = unirank::load_config(o.config_path);
  if (!o.windows.empty()) {
    config.windows.clear();
    for (const auto& w : o.windows) config.windows.push_back(unirank::TimeWindow::parse(w));
  }
  if (!o.out_dir.empty()) config.out_dir = o.out_dir;
  if (o.min_n > 0) config.min_n = o.min_n;
  if (!o.q1_policy.empty()) config.q1_policy = unirank::parse_q1_policy(o.q1_policy);
  if (o.strict_quartiles) config.missing_quartile = unirank::MissingQuartilePolicy::strict;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliometric field rankings and ranking concordance"};
  app.set_version_flag("--version", std::string(unirank::kToolName) + " " + unirank::kToolVersion);
  app.require_subcommand(1);

  Overrides o;
  auto* validate = app.add_subcommand("validate", "Load and check every input");
  auto* rank = app.add_subcommand("rank", "Write per-field rankings, quadrant scatter data and indicators");
  auto* quadrant = app.add_subcommand("quadrant", "Write per-field quadrant scatter data only");
  auto* compare = app.add_subcommand("compare", "Write concordance reports for the crosswalk");
  for (auto* cmd : {validate, rank, quadrant, compare}) add_common(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : unirank::kExitConfig;
  }

  unirank::RunConfig config;
  try {
    config = resolve(o);
  } catch (const unirank::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return unirank::kExitConfig;
  }

  const unirank::RunOptions options{o.jobs, false};
  if (validate->parsed()) return unirank::cmd_validate(config, std::cout, std::cerr);
  if (rank->parsed()) return unirank::cmd_rank(config, std::cout, std::cerr, options);
  if (quadrant->parsed()) return unirank::cmd_quadrant(config, std::cout, std::cerr, options);
  return unirank::cmd_compare(config, std::cout, std::cerr, options);
}
