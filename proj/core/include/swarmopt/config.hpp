#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "swarmopt/objective.hpp"
#include "swarmopt/space.hpp"
#include "swarmopt/strategy.hpp"
#include "swarmopt/transport.hpp"

namespace swarmopt {

/// Everything needed to reproduce one optimization run.
struct RunConfig {
  explicit RunConfig(SearchSpace s) : space(std::move(s)) {}

  SearchSpace space;
  StrategyKind strategy = RandomSearch{};
  std::size_t num_agents = 1;
  std::size_t num_ips = 1;
  std::size_t num_iter = 1;
  std::uint64_t seed = 0;
  TransportConfig transport;
  ObjectiveBinding objective;
  std::string log_path;

  bool operator==(const RunConfig&) const = default;
};

/// Enforces num_iter >= num_ips >= num_agents >= 1 and the per-module invariants.
/// Throws InvalidConfig naming the violated bound.
void validate(const RunConfig& config);

/// Parses the JSON config grammar. Throws InvalidConfig. Does not call `validate`.
RunConfig parse_config(std::string_view json_text);

/// Reads and parses a config file. Throws IoError or InvalidConfig.
RunConfig load_config(const std::filesystem::path& path);

/// Compact single-line JSON; `parse_config` inverts it.
std::string config_to_json(const RunConfig& config);

}  // namespace swarmopt
