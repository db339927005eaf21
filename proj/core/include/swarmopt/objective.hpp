#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>

#include "swarmopt/random.hpp"
#include "swarmopt/space.hpp"

namespace swarmopt {

/// Function evaluated by an agent. One instance per agent; not shared across threads.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double evaluate(const Point& p) = 0;
};

/// Objective selected by name from a run config, with numeric parameters.
///
/// Names: "ackley" (a, b, c), "ackley+delay" (delay_s required), "synthetic_satellite",
/// "synthetic_multimodal" (noise_std). Every binding accepts an optional delay_s.
struct ObjectiveBinding {
  std::string name;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  bool operator==(const ObjectiveBinding&) const = default;
};

namespace bench {

inline constexpr double kAckleyA = 20.0;
inline constexpr double kAckleyB = 0.2;
inline constexpr double kAckleyC = 2.0 * std::numbers::pi;

/// -a exp(-b sqrt(mean x^2)) - exp(mean cos(c x)) + a + e
double ackley(std::span<const double> x, double a = kAckleyA, double b = kAckleyB, double c = kAckleyC);

/// Separable quadratic over the satellite-scheduling grid, minimized at (2.0, 1.0, 4).
/// Throws PointOutOfSpace for points off the grid.
double synthetic_satellite(const Point& p);

/// Rastrigin-style surface on normalized coordinates: 10 d + sum(v^2 - 10 cos(2 pi v))
/// with v = kMultimodalScale (u - u*), where u* is `multimodal_optimum`.
double synthetic_multimodal(const SearchSpace& space, const Point& p);

inline constexpr double kMultimodalScale = 4.0;

/// The grid-snapped unit-cube location of the global minimum.
UnitPoint multimodal_optimum(const SearchSpace& space);

/// Satellite-scheduling grid: turning rate {1.0..3.0 by 0.25}, view height
/// {0.25..1.5 by 0.25}, satellites {2..6}; 270 cells.
SearchSpace satellite_space();

/// Spiking-GNN grid: paper-to-paper weight {100..500}, train-to-topic weight {1..10},
/// validation-to-topic tau {20..60}, simulation steps {5, 7, ..., 13}.
SearchSpace gnn_space();

/// [lo, hi]^d continuous box.
SearchSpace ackley_space(std::size_t d, double lo = -5.0, double hi = 5.0);

/// Sleeps for `delay_s` before delegating to `base`.
std::unique_ptr<Objective> with_delay(std::unique_ptr<Objective> base, double delay_s);

/// Builds the named objective for `space`. `noise_seed` feeds any stochastic binding.
/// Throws UnknownObjective or InvalidConfig.
std::unique_ptr<Objective> make_objective(const ObjectiveBinding& binding, const SearchSpace& space,
                                          std::uint64_t noise_seed);

/// Checks the binding's name and parameters against `space` without building it.
void validate(const ObjectiveBinding& binding, const SearchSpace& space);

}  // namespace bench
}  // namespace swarmopt
