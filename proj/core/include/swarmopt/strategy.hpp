#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "swarmopt/acquisition.hpp"
#include "swarmopt/gp.hpp"
#include "swarmopt/random.hpp"
#include "swarmopt/space.hpp"

namespace swarmopt {

struct RandomSearch {
  bool operator==(const RandomSearch&) const = default;
};
struct GridSearch {
  bool operator==(const GridSearch&) const = default;
};
struct BayesianSearch {
  acquisition::AcquisitionSpec acquisition;
  acquisition::LieStrategy lie = acquisition::LieStrategy::ConstantLiarMean;
  bool operator==(const BayesianSearch&) const = default;
};

using StrategyKind = std::variant<RandomSearch, GridSearch, BayesianSearch>;

enum class TrialState { Dispatched, Completed };

struct Trial {
  std::uint64_t trial_id = 0;
  Point point;
  double value = 0.0;  // minimized; +inf marks a failed evaluation
  double eval_duration_s = 0.0;
  std::size_t agent_id = 0;
  TrialState state = TrialState::Dispatched;
};

struct BestObservation {
  Point point;
  double value;
  std::uint64_t trial_id;
};

/// Ask/tell search over a fixed space. Owned by one caller; not thread-safe.
class Strategy {
 public:
  Strategy(SearchSpace space, std::uint64_t seed);
  virtual ~Strategy() = default;
  Strategy(const Strategy&) = delete;
  Strategy& operator=(const Strategy&) = delete;

  /// Seed points evaluated before any model-guided proposal. Marked pending.
  std::vector<Point> initial_points(std::size_t num_ips);

  /// Up to n new points, marked pending.
  std::vector<Point> ask(std::size_t n);

  /// Records a completed trial whose point this strategy issued.
  void tell(const Trial& trial);

  /// Completed trial with the smallest value; earliest trial_id wins ties.
  BestObservation best() const;

  std::size_t completed() const { return completed_.size(); }
  std::size_t pending() const { return pending_.size(); }
  const SearchSpace& space() const { return space_; }

 protected:
  virtual std::vector<Point> do_initial_points(std::size_t num_ips);
  virtual std::vector<Point> do_ask(std::size_t n) = 0;
  virtual void on_tell(const Trial&) {}

  SearchSpace space_;
  Rng rng_;

 private:
  std::vector<Point> pending_;
  std::vector<Trial> completed_;
  std::set<std::uint64_t> told_ids_;
};

class RandomStrategy final : public Strategy {
 public:
  using Strategy::Strategy;

 protected:
  std::vector<Point> do_ask(std::size_t n) override;
};

/// Lexicographic sweep over an all-discrete space, each cell issued once.
class GridStrategy final : public Strategy {
 public:
  GridStrategy(SearchSpace space, std::uint64_t seed);

  std::size_t remaining() const { return total_ - cursor_; }

 protected:
  std::vector<Point> do_initial_points(std::size_t num_ips) override;
  std::vector<Point> do_ask(std::size_t n) override;

 private:
  std::size_t total_;
  std::size_t cursor_ = 0;
};

/// GP surrogate refit (with hyperparameter selection) after every tell;
/// batches come from constant-liar acquisition.
class BayesianStrategy final : public Strategy {
 public:
  BayesianStrategy(SearchSpace space, std::uint64_t seed, BayesianSearch options);

  /// Current surrogate; empty until the first tell.
  const std::optional<gp::GpModel>& model() const { return model_; }

 protected:
  std::vector<Point> do_ask(std::size_t n) override;
  void on_tell(const Trial& trial) override;

 private:
  BayesianSearch options_;
  std::vector<std::vector<double>> inputs_;
  std::vector<double> values_;
  std::optional<gp::GpModel> model_;
};

/// Replaces non-finite values with a finite penalty worse than every finite one.
std::vector<double> penalize_failures(std::span<const double> values);

std::unique_ptr<Strategy> make_strategy(const StrategyKind& kind, SearchSpace space, std::uint64_t seed);

}  // namespace swarmopt
