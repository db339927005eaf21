#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "swarmopt/config.hpp"
#include "swarmopt/coordinator.hpp"

namespace swarmopt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitRuntimeAbort = 3,
  kExitConnectionRefused = 4,
};

inline constexpr const char* kSeedEnv = "SWARMOPT_SEED";

/// Loads and validates a config, then applies SWARMOPT_SEED if it is set.
/// Throws IoError or InvalidConfig.
RunConfig load_run_config(const std::filesystem::path& path);

/// `best_value=<v> best_point=<p> wall_time_s=<t> trials=<n>`
std::string summary_line(const RunResult& result);

int cmd_run(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::filesystem::path config;
  std::vector<std::size_t> agents;
  std::vector<double> delays_s;
  std::size_t repeats = 1;
  std::filesystem::path out_csv;
};

/// Where the per-cell median summary goes: `<stem>.summary<ext>` beside `out_csv`.
std::filesystem::path summary_path(const std::filesystem::path& out_csv);

/// Runs agents x delays x repeats. Rows are written even for failed runs.
/// Repeat r uses seed + r. num_ips is raised to the agent count when it is smaller.
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

struct AgentOptions {
  std::string connect;
  std::string objective;
  std::map<std::string, double> params;
  std::int64_t id = -1;  // negative: let the coordinator pick
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> config;  // supplies the space for space-dependent objectives
};

int cmd_agent(const AgentOptions& options, std::ostream& out, std::ostream& err);

}  // namespace swarmopt::cli
