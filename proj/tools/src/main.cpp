#include <iostream>

#include <CLI11.hpp>

#include "swarmopt_cli/commands.hpp"

namespace {

/// "k=v" pairs from --param.
std::map<std::string, double> parse_params(const std::vector<std::string>& pairs) {
  std::map<std::string, double> out;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected key=value, got " + p);
    try {
      std::size_t used = 0;
      const double v = std::stod(p.substr(eq + 1), &used);
      if (used != p.size() - eq - 1) throw std::invalid_argument(p);
      out[p.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--param", "value is not a number: " + p);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = swarmopt::cli;

  CLI::App app{"Asynchronous multi-agent hyperparameter search"};
  app.require_subcommand(1);

  std::string run_cfg;
  auto* run = app.add_subcommand("run", "Execute one optimization run");
  run->add_option("config", run_cfg, "Run config (JSON)")->required();

  std::string validate_cfg;
  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", validate_cfg, "Run config (JSON)")->required();

  cli::SweepOptions sweep_opts;
  std::string sweep_cfg, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run the agents x delays x repeats cross-product");
  sweep->add_option("config", sweep_cfg, "Base run config (JSON)")->required();
  sweep->add_option("--agents", sweep_opts.agents, "Agent counts, e.g. 1,5,10")->delimiter(',')->required();
  sweep->add_option("--delays", sweep_opts.delays_s, "Evaluation delays in seconds, e.g. 0,1,3")
      ->delimiter(',')
      ->required();
  sweep->add_option("--repeats", sweep_opts.repeats, "Repeats per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "Per-run CSV; the median summary goes beside it")->required();

  cli::AgentOptions agent_opts;
  std::vector<std::string> agent_params;
  std::string agent_cfg;
  auto* agent = app.add_subcommand("agent", "Serve evaluations for a coordinator over TCP");
  agent->add_option("--connect", agent_opts.connect, "Coordinator host:port")->required();
  agent->add_option("--objective", agent_opts.objective, "Objective name")->required();
  agent->add_option("--param", agent_params, "Objective parameter key=value (repeatable)");
  agent->add_option("--id", agent_opts.id, "Requested agent id");
  agent->add_option("--seed", agent_opts.seed, "Seed for stochastic objectives");
  agent->add_option("--config", agent_cfg, "Config whose search space the objective uses");

  try {
    app.parse(argc, argv);
    agent_opts.params = parse_params(agent_params);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return cli::kExitConfigError;
  }

  if (*run) return cli::cmd_run(run_cfg, std::cout, std::cerr);
  if (*validate) return cli::cmd_validate(validate_cfg, std::cout, std::cerr);
  if (*sweep) {
    sweep_opts.config = sweep_cfg;
    sweep_opts.out_csv = sweep_out;
    return cli::cmd_sweep(sweep_opts, std::cout, std::cerr);
  }
  if (!agent_cfg.empty()) agent_opts.config = agent_cfg;
  return cli::cmd_agent(agent_opts, std::cout, std::cerr);
}
