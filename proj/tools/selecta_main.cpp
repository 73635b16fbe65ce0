#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "selecta/cli.hpp"
#include "selecta/errors.hpp"
#include "selecta/json_io.hpp"
#include "selecta/parallel.hpp"

namespace {

const char* describe(const std::string& command) {
  if (command == "sample-size") return "Minimum n per group from the plug-in score";
  if (command == "sample-size-sim") return "Minimum n per group from the simulated mean score";
  if (command == "analyze") return "Posterior selection probabilities and decision for observed data";
  if (command == "oc-sim") return "Operating characteristics (xi, nu) by simulation";
  if (command == "freq-design") return "Frequentist design: lambda at n, or its sample size";
  if (command == "curve") return "Score against n, deterministic or simulated";
  return "Protocol, SAP or summary text";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian treatment selection for two-arm phase II trials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(selecta::kSchemaVersion));

  std::string config_path;
  std::string output;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t m = 0;
  std::vector<std::string> overrides;
  bool quiet = false;

  for (const auto& name : selecta::cli::command_names()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--output", output, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_path, "Write output to this file instead of stdout");
    sub->add_option("--seed", seed, "Override the RNG seed");
    sub->add_option("--m", m, "Override the number of simulation replicates")
        ->check(CLI::PositiveNumber);
    sub->add_option("--set", overrides, "Override a config field: key=value (repeatable)");
    sub->add_flag("--quiet", quiet, "Suppress informational messages");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << selecta::error_json("usage_error", e.what()).dump() << "\n";
    return selecta::cli::kConfigError;
  }

  const int threads = selecta::configure_threads_from_env();
  auto* sub = app.get_subcommands().front();

  selecta::cli::CommandConfig cfg;
  cfg.command = sub->get_name();
  if (!output.empty()) cfg.output = selecta::cli::parse_output_format(output);
  if (!out_path.empty()) cfg.out_path = out_path;
  if (sub->count("--seed")) cfg.seed = seed;
  if (sub->count("--m")) cfg.m = m;
  cfg.overrides = overrides;

  try {
    cfg.config_text = selecta::cli::read_file(config_path);
  } catch (const selecta::ConfigError& e) {
    std::cerr << selecta::error_json("config_error", e.what(), {{e.field(), e.what()}}).dump() << "\n";
    return selecta::cli::kConfigError;
  }

  if (!quiet) std::fprintf(stderr, "selecta %s: %d thread(s)\n", cfg.command.c_str(), threads);
  const auto outcome = selecta::cli::run_command(cfg);
  if (outcome.exit_code != selecta::cli::kOk) {
    std::cerr << outcome.error;
    return outcome.exit_code;
  }
  std::cout << outcome.output;
  if (!quiet && cfg.out_path) std::fprintf(stderr, "wrote %s\n", cfg.out_path->c_str());
  return 0;
}
