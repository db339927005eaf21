#include "swarmopt/objective.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

#include "swarmopt/error.hpp"

namespace swarmopt {

double ObjectiveBinding::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace bench {

double ackley(std::span<const double> x, double a, double b, double c) {
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(c * v);
  }
  const auto d = static_cast<double>(x.size());
  return -a * std::exp(-b * std::sqrt(sq / d)) - std::exp(cs / d) + a + std::numbers::e;
}

SearchSpace satellite_space() {
  return SearchSpace({
      Dimension::stepped("turning_rate", 1.0, 3.0, 0.25),
      Dimension::stepped("view_height", 0.25, 1.5, 0.25),
      Dimension::stepped("num_satellites", 2.0, 6.0, 1.0),
  });
}

SearchSpace gnn_space() {
  return SearchSpace({
      Dimension::stepped("paper_to_paper_weight", 100.0, 500.0, 1.0),
      Dimension::stepped("train_to_topic_weight", 1.0, 10.0, 1.0),
      Dimension::stepped("val_to_topic_tau", 20.0, 60.0, 1.0),
      Dimension::stepped("simulation_steps", 5.0, 13.0, 2.0),
  });
}

SearchSpace ackley_space(std::size_t d, double lo, double hi) {
  std::vector<Dimension> dims;
  dims.reserve(d);
  for (std::size_t i = 0; i < d; ++i) dims.push_back(Dimension::continuous("x" + std::to_string(i), lo, hi));
  return SearchSpace(std::move(dims));
}

double synthetic_satellite(const Point& p) {
  static const SearchSpace space = satellite_space();
  if (!space.contains(p)) throw Error(ErrorCode::PointOutOfSpace, "point is not a satellite-grid cell");
  const double turning = p.coords[0] - 2.0;
  const double view = p.coords[1] - 1.0;
  const double sats = p.coords[2] - 4.0;
  return turning * turning + 4.0 * view * view + 0.5 * sats * sats;
}

UnitPoint multimodal_optimum(const SearchSpace& space) {
  static constexpr double kOffsets[] = {0.7, 0.3, 0.6, 0.8};
  UnitPoint u;
  u.coords.reserve(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) u.coords.push_back(kOffsets[j % std::size(kOffsets)]);
  return snap(space, u);
}

double synthetic_multimodal(const SearchSpace& space, const Point& p) {
  const UnitPoint u = normalize(space, p);
  const UnitPoint opt = multimodal_optimum(space);
  double total = 10.0 * static_cast<double>(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) {
    const double v = kMultimodalScale * (u.coords[j] - opt.coords[j]);
    total += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  }
  return total;
}

namespace {

class FunctionObjective final : public Objective {
 public:
  explicit FunctionObjective(std::function<double(const Point&)> f) : f_(std::move(f)) {}
  double evaluate(const Point& p) override { return f_(p); }

 private:
  std::function<double(const Point&)> f_;
};

class NoisyObjective final : public Objective {
 public:
  NoisyObjective(std::unique_ptr<Objective> base, double noise_std, std::uint64_t seed)
      : base_(std::move(base)), noise_std_(noise_std), rng_(seed) {}
  double evaluate(const Point& p) override { return base_->evaluate(p) + rng_.normal(0.0, noise_std_); }

 private:
  std::unique_ptr<Objective> base_;
  double noise_std_;
  Rng rng_;
};

class DelayedObjective final : public Objective {
 public:
  DelayedObjective(std::unique_ptr<Objective> base, double delay_s) : base_(std::move(base)), delay_s_(delay_s) {}
  double evaluate(const Point& p) override {
    std::this_thread::sleep_for(std::chrono::duration<double>(delay_s_));
    return base_->evaluate(p);
  }

 private:
  std::unique_ptr<Objective> base_;
  double delay_s_;
};

const std::set<std::string>& allowed_params(const std::string& name) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"ackley", {"a", "b", "c", "delay_s"}},
      {"ackley+delay", {"a", "b", "c", "delay_s"}},
      {"synthetic_satellite", {"delay_s"}},
      {"synthetic_multimodal", {"noise_std", "delay_s"}},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::UnknownObjective, "no objective named '" + name + "'");
  return it->second;
}

bool same_grid(const SearchSpace& a, const SearchSpace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind() != b[i].kind()) return false;
  }
  return true;
}

}  // namespace

void validate(const ObjectiveBinding& binding, const SearchSpace& space) {
  const auto& allowed = allowed_params(binding.name);
  for (const auto& [key, value] : binding.params) {
    if (!allowed.contains(key)) {
      throw Error(ErrorCode::InvalidConfig, "objective '" + binding.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidConfig, "parameter '" + key + "' must be finite");
  }
  if (binding.param("delay_s", 0.0) < 0) throw Error(ErrorCode::InvalidConfig, "delay_s must be >= 0");
  if (binding.name == "ackley+delay" && !binding.params.contains("delay_s")) {
    throw Error(ErrorCode::InvalidConfig, "'ackley+delay' requires delay_s");
  }
  if (binding.name == "synthetic_satellite" && !same_grid(space, satellite_space())) {
    throw Error(ErrorCode::InvalidConfig, "'synthetic_satellite' requires the satellite-scheduling grid");
  }
  if (binding.param("noise_std", 0.0) < 0) throw Error(ErrorCode::InvalidConfig, "noise_std must be >= 0");
}

std::unique_ptr<Objective> with_delay(std::unique_ptr<Objective> base, double delay_s) {
  if (!std::isfinite(delay_s) || delay_s < 0) throw Error(ErrorCode::InvalidConfig, "delay must be finite and >= 0");
  if (delay_s == 0) return base;
  return std::make_unique<DelayedObjective>(std::move(base), delay_s);
}

std::unique_ptr<Objective> make_objective(const ObjectiveBinding& binding, const SearchSpace& space,
                                          std::uint64_t noise_seed) {
  validate(binding, space);
  std::unique_ptr<Objective> base;
  if (binding.name == "ackley" || binding.name == "ackley+delay") {
    const double a = binding.param("a", kAckleyA);
    const double b = binding.param("b", kAckleyB);
    const double c = binding.param("c", kAckleyC);
    base = std::make_unique<FunctionObjective>([a, b, c](const Point& p) { return ackley(p.coords, a, b, c); });
  } else if (binding.name == "synthetic_satellite") {
    base = std::make_unique<FunctionObjective>(synthetic_satellite);
  } else {
    base = std::make_unique<FunctionObjective>([space](const Point& p) { return synthetic_multimodal(space, p); });
    const double noise = binding.param("noise_std", 0.0);
    if (noise > 0) base = std::make_unique<NoisyObjective>(std::move(base), noise, noise_seed);
  }
  return with_delay(std::move(base), binding.param("delay_s", 0.0));
}

}  // namespace bench
}  // namespace swarmopt
