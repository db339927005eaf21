#include "swarmopt/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarmopt {

Strategy::Strategy(SearchSpace space, std::uint64_t seed) : space_(std::move(space)), rng_(seed) {}

std::vector<Point> Strategy::initial_points(std::size_t num_ips) {
  if (num_ips == 0) throw Error(ErrorCode::InvalidConfig, "number of initial points must be at least 1");
  auto points = do_initial_points(num_ips);
  pending_.insert(pending_.end(), points.begin(), points.end());
  return points;
}

std::vector<Point> Strategy::do_initial_points(std::size_t num_ips) {
  std::vector<Point> out;
  out.reserve(num_ips);
  for (std::size_t i = 0; i < num_ips; ++i) out.push_back(sample_uniform(space_, rng_));
  return out;
}

std::vector<Point> Strategy::ask(std::size_t n) {
  if (n == 0) return {};
  auto points = do_ask(n);
  pending_.insert(pending_.end(), points.begin(), points.end());
  return points;
}

void Strategy::tell(const Trial& trial) {
  if (trial.state != TrialState::Completed) {
    throw Error(ErrorCode::ProtocolViolation, "only completed trials can be told");
  }
  if (told_ids_.contains(trial.trial_id)) {
    throw Error(ErrorCode::DuplicateTell, "trial " + std::to_string(trial.trial_id) + " already told");
  }
  const auto it = std::find(pending_.begin(), pending_.end(), trial.point);
  if (it == pending_.end()) {
    throw Error(ErrorCode::UnknownTrial, "trial " + std::to_string(trial.trial_id) + " carries a point never issued");
  }
  pending_.erase(it);
  told_ids_.insert(trial.trial_id);
  completed_.push_back(trial);
  on_tell(trial);
}

BestObservation Strategy::best() const {
  if (completed_.empty()) throw Error(ErrorCode::NoCompletedTrials, "no completed trials yet");
  const Trial* best = &completed_.front();
  for (const auto& t : completed_) {
    // NaN never wins; +inf only if nothing else exists.
    if (t.value < best->value || (t.value == best->value && t.trial_id < best->trial_id) ||
        (std::isnan(best->value) && !std::isnan(t.value))) {
      best = &t;
    }
  }
  return {best->point, best->value, best->trial_id};
}

std::vector<Point> RandomStrategy::do_ask(std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform(space_, rng_));
  return out;
}

GridStrategy::GridStrategy(SearchSpace space, std::uint64_t seed)
    : Strategy(std::move(space), seed), total_(space_.grid_size()) {}

std::vector<Point> GridStrategy::do_initial_points(std::size_t num_ips) {
  if (num_ips > remaining()) {
    throw Error(ErrorCode::GridExhausted, std::to_string(num_ips) + " initial points requested but the grid has " +
                                              std::to_string(remaining()) + " cells left");
  }
  return do_ask(num_ips);
}

std::vector<Point> GridStrategy::do_ask(std::size_t n) {
  const auto take = std::min(n, remaining());
  std::vector<Point> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(grid_point_at(space_, cursor_++));
  return out;
}

BayesianStrategy::BayesianStrategy(SearchSpace space, std::uint64_t seed, BayesianSearch options)
    : Strategy(std::move(space), seed), options_(options) {
  acquisition::validate(options_.acquisition);
}

std::vector<Point> BayesianStrategy::do_ask(std::size_t n) {
  if (!model_) throw Error(ErrorCode::NoCompletedTrials, "Bayesian ask needs at least one told trial");
  return acquisition::propose_batch(*model_, space_, options_.acquisition, n, options_.lie, rng_);
}

void BayesianStrategy::on_tell(const Trial& trial) {
  inputs_.push_back(normalize(space_, trial.point).coords);
  values_.push_back(trial.value);
  const auto x = gp::to_matrix(inputs_, space_.size());
  const auto y = penalize_failures(values_);
  model_ = gp::GpModel::fit(x, y, gp::select_hyperparameters(x, y));
}

std::vector<double> penalize_failures(std::span<const double> values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double penalty = std::isfinite(hi) ? hi + std::max(1.0, hi - lo) : 0.0;
  std::vector<double> out(values.begin(), values.end());
  for (auto& v : out) {
    if (!std::isfinite(v)) v = penalty;
  }
  return out;
}

std::unique_ptr<Strategy> make_strategy(const StrategyKind& kind, SearchSpace space, std::uint64_t seed) {
  return std::visit(
      [&](const auto& k) -> std::unique_ptr<Strategy> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, RandomSearch>) {
          return std::make_unique<RandomStrategy>(std::move(space), seed);
        } else if constexpr (std::is_same_v<K, GridSearch>) {
          return std::make_unique<GridStrategy>(std::move(space), seed);
        } else {
          return std::make_unique<BayesianStrategy>(std::move(space), seed, k);
        }
      },
      kind);
}

}  // namespace swarmopt
