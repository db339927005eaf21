#include "swarmopt/coordinator.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <thread>

#include "swarmopt/error.hpp"

namespace swarmopt {

Coordinator::Coordinator(Strategy& strategy, std::span<PortPair> ports, TrialLog* log, Clock::time_point start)
    : strategy_(strategy), ports_(ports), log_(log), start_(start), outstanding_(ports.size()) {
  if (ports_.empty()) throw Error(ErrorCode::InvalidConfig, "coordinator needs at least one agent");
}

double Coordinator::now_s() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

void Coordinator::flush_log() {
  if (log_ != nullptr) log_->flush();
}

void Coordinator::dispatch(std::size_t agent, Point point, Phase phase, std::size_t batch) {
  if (outstanding_[agent]) {
    throw Error(ErrorCode::ProtocolViolation, "agent " + std::to_string(agent) + " already has a candidate");
  }
  const auto id = next_trial_id_++;
  ports_[agent].to_agent->send(Candidate{id, point.coords});
  outstanding_[agent] = Outstanding{id, std::move(point), now_s(), phase, batch};
}

std::optional<TrialRecord> Coordinator::poll(std::size_t agent) {
  auto& in = *ports_[agent].from_agent;
  if (!in.probe()) return std::nullopt;
  const Message msg = in.recv();
  const auto* result = std::get_if<Result>(&msg);
  if (result == nullptr) throw Error(ErrorCode::ProtocolViolation, "agent sent something other than a result");
  auto& slot = outstanding_[agent];
  if (!slot || slot->trial_id != result->trial_id) {
    throw Error(ErrorCode::ProtocolViolation,
                "agent " + std::to_string(agent) + " returned trial " + std::to_string(result->trial_id) +
                    " which it was not evaluating");
  }

  TrialRecord rec;
  rec.trial = Trial{slot->trial_id,         std::move(slot->point),    result->value,
                    result->duration_s,     ports_[agent].agent_id,   TrialState::Completed};
  rec.dispatched_at_s = slot->dispatched_at_s;
  rec.completed_at_s = now_s();
  rec.phase = slot->phase;
  rec.batch = slot->batch;
  slot.reset();

  strategy_.tell(rec.trial);
  ++completed_;
  trials_.push_back(rec);
  if (log_ != nullptr) log_->append(rec);
  return rec;
}

std::size_t Coordinator::phase_initial(std::size_t num_ips) {
  const auto agents = ports_.size();
  if (num_ips < agents) {
    throw Error(ErrorCode::InvalidConfig, "num_ips (" + std::to_string(num_ips) + ") must be >= num_agents (" +
                                              std::to_string(agents) + ")");
  }
  auto initial = strategy_.initial_points(num_ips);
  std::deque<Point> queue(std::make_move_iterator(initial.begin()), std::make_move_iterator(initial.end()));

  for (std::size_t i = 0; i < agents; ++i) {
    dispatch(i, std::move(queue.front()), Phase::Initial, 0);
    queue.pop_front();
  }

  const auto target = completed_ + num_ips;
  while (completed_ < target) {
    bool progressed = false;
    for (std::size_t i = 0; i < agents; ++i) {
      if (!poll(i)) continue;
      progressed = true;
      if (!queue.empty()) {
        dispatch(i, std::move(queue.front()), Phase::Initial, 0);
        queue.pop_front();
      }
    }
    if (!progressed) std::this_thread::sleep_for(kIdleSweepSleep);
  }
  flush_log();
  return completed_;
}

std::size_t Coordinator::phase_heuristic(std::size_t num_iter) {
  const auto agents = ports_.size();
  for (;;) {
    const auto num_points = std::min(num_iter > completed_ ? num_iter - completed_ : 0, agents);
    if (num_points == 0) return completed_;

    auto points = strategy_.ask(num_points);
    if (points.empty()) throw Error(ErrorCode::GridExhausted, "strategy has no points left to ask");
    ++batch_;
    const auto in_batch = points.size();
    for (std::size_t i = 0; i < in_batch; ++i) dispatch(i, std::move(points[i]), Phase::Heuristic, batch_);

    std::size_t done = 0;
    while (done < in_batch) {
      bool progressed = false;
      for (std::size_t i = 0; i < in_batch; ++i) {
        if (poll(i)) {
          ++done;
          progressed = true;
        }
      }
      if (!progressed) std::this_thread::sleep_for(kIdleSweepSleep);
    }
    flush_log();
  }
}

std::vector<std::size_t> Coordinator::per_agent_counts() const {
  std::vector<std::size_t> counts(ports_.size(), 0);
  for (const auto& t : trials_) {
    for (std::size_t i = 0; i < ports_.size(); ++i) {
      if (ports_[i].agent_id == t.trial.agent_id) ++counts[i];
    }
  }
  return counts;
}

RunResult run(const RunConfig& config) {
  return run(config, [&config](std::size_t agent) {
    return bench::make_objective(config.objective, config.space, derive_seed(config.seed, agent));
  });
}

RunResult run(const RunConfig& config, const ObjectiveFactory& factory) {
  validate(config);
  const auto start = Coordinator::Clock::now();

  std::unique_ptr<TrialLog> log;
  if (!config.log_path.empty()) log = std::make_unique<TrialLog>(config.log_path, config);

  auto strategy = make_strategy(config.strategy, config.space, config.seed);
  auto pool = spawn_agents(factory, config.num_agents, config.transport);

  Coordinator coordinator(*strategy, pool->ports(), log.get(), start);
  try {
    coordinator.phase_initial(config.num_ips);
    coordinator.phase_heuristic(config.num_iter);
  } catch (...) {
    if (log) {
      try {
        log->flush();
      } catch (const Error&) {
        // the original failure is the one worth reporting
      }
    }
    throw;
  }
  pool->shutdown();

  RunResult result;
  result.wall_time_s = std::chrono::duration<double>(Coordinator::Clock::now() - start).count();
  const auto best = strategy->best();
  result.best_point = best.point;
  result.best_value = best.value;
  result.per_agent_counts = coordinator.per_agent_counts();
  result.trials = coordinator.trials();
  return result;
}

}  // namespace swarmopt
