#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmopt/config.hpp"
#include "swarmopt/strategy.hpp"
#include "swarmopt/trial_log.hpp"
#include "swarmopt/transport.hpp"

namespace swarmopt {

/// Sleep after a full probe sweep that found nothing.
inline constexpr std::chrono::milliseconds kIdleSweepSleep{1};

/// Central solver loop. Owns no agents: it drives a strategy over ports someone else set up.
/// Every recv is preceded by a successful probe, and each agent has at most one
/// outstanding candidate.
class Coordinator {
 public:
  using Clock = std::chrono::steady_clock;

  Coordinator(Strategy& strategy, std::span<PortPair> ports, TrialLog* log = nullptr,
              Clock::time_point start = Clock::now());

  /// Seeds every agent with an initial point, then refills whichever agent reports back
  /// until all `num_ips` initial points are told. Requires num_ips >= number of agents.
  std::size_t phase_initial(std::size_t num_ips);

  /// Synchronous batches of min(num_iter - completed, agents) asked points, one per
  /// agent, each batch fully told before the next is asked.
  std::size_t phase_heuristic(std::size_t num_iter);

  std::size_t completed() const { return completed_; }
  const std::vector<TrialRecord>& trials() const { return trials_; }
  std::vector<std::size_t> per_agent_counts() const;

 private:
  void dispatch(std::size_t agent, Point point, Phase phase, std::size_t batch);
  /// Probes one agent; on a Result, tells the strategy and returns the record.
  std::optional<TrialRecord> poll(std::size_t agent);
  double now_s() const;
  void flush_log();

  struct Outstanding {
    std::uint64_t trial_id;
    Point point;
    double dispatched_at_s;
    Phase phase;
    std::size_t batch;
  };

  Strategy& strategy_;
  std::span<PortPair> ports_;
  TrialLog* log_;
  Clock::time_point start_;
  std::vector<std::optional<Outstanding>> outstanding_;
  std::vector<TrialRecord> trials_;
  std::uint64_t next_trial_id_ = 0;
  std::size_t completed_ = 0;
  std::size_t batch_ = 0;
};

struct RunResult {
  std::vector<TrialRecord> trials;  // completion order
  Point best_point;
  double best_value = 0.0;
  double wall_time_s = 0.0;
  std::vector<std::size_t> per_agent_counts;
};

/// Validates `config`, starts agents, runs both phases, shuts agents down, and writes
/// the JSONL log when `config.log_path` is set. Errors propagate after the partial log
/// is flushed.
RunResult run(const RunConfig& config);

/// `run` with caller-supplied agents, e.g. heterogeneous test objectives.
RunResult run(const RunConfig& config, const ObjectiveFactory& factory);

}  // namespace swarmopt
