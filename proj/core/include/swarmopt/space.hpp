#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "swarmopt/error.hpp"
#include "swarmopt/random.hpp"

namespace swarmopt {

struct Continuous {
  double lo;
  double hi;
  bool operator==(const Continuous&) const = default;
};

struct Discrete {
  std::vector<double> values;  // strictly increasing
  bool operator==(const Discrete&) const = default;
};

/// A named axis of a search space. Construction validates the range or value set.
class Dimension {
 public:
  static Dimension continuous(std::string name, double lo, double hi);
  static Dimension discrete(std::string name, std::vector<double> values);
  /// Evenly stepped value set lo, lo+step, ..., up to hi (inclusive, within step/1e6).
  static Dimension stepped(std::string name, double lo, double hi, double step);

  const std::string& name() const { return name_; }
  bool is_discrete() const { return std::holds_alternative<Discrete>(kind_); }
  const Continuous& as_continuous() const { return std::get<Continuous>(kind_); }
  const Discrete& as_discrete() const { return std::get<Discrete>(kind_); }
  const std::variant<Continuous, Discrete>& kind() const { return kind_; }

  /// True if x lies in [lo, hi] or exactly equals one of the discrete values.
  bool contains(double x) const;

  bool operator==(const Dimension&) const = default;

 private:
  Dimension(std::string name, std::variant<Continuous, Discrete> kind)
      : name_(std::move(name)), kind_(std::move(kind)) {}

  std::string name_;
  std::variant<Continuous, Discrete> kind_;
};

/// Coordinates in the native units of a space.
struct Point {
  std::vector<double> coords;
  bool operator==(const Point&) const = default;
};

/// Coordinates in [0,1]^d.
struct UnitPoint {
  std::vector<double> coords;
  bool operator==(const UnitPoint&) const = default;
};

class SearchSpace {
 public:
  explicit SearchSpace(std::vector<Dimension> dims);

  std::size_t size() const { return dims_.size(); }
  const Dimension& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Dimension>& dims() const { return dims_; }
  bool all_discrete() const;

  bool contains(const Point& p) const;

  /// Number of grid cells; requires an all-discrete space.
  std::size_t grid_size() const;

  bool operator==(const SearchSpace&) const = default;

 private:
  std::vector<Dimension> dims_;
};

/// i.i.d. uniform draw: continuous dims linearly map `rng.uniform()`, discrete
/// dims pick `values[rng.index(m)]`.
template <UnitSampler R>
Point sample_uniform(const SearchSpace& space, R& rng) {
  Point p;
  p.coords.reserve(space.size());
  for (const auto& dim : space.dims()) {
    if (dim.is_discrete()) {
      const auto& values = dim.as_discrete().values;
      p.coords.push_back(values[rng.index(values.size())]);
    } else {
      const auto& [lo, hi] = dim.as_continuous();
      const double x = lo + static_cast<double>(rng.uniform()) * (hi - lo);
      p.coords.push_back(x < hi ? x : hi);
    }
  }
  return p;
}

/// Full Cartesian product, first dimension slowest.
std::vector<Point> grid_points(const SearchSpace& space);

/// The grid cell at a lexicographic position; inverse of enumeration order.
Point grid_point_at(const SearchSpace& space, std::size_t index);

UnitPoint normalize(const SearchSpace& space, const Point& p);
Point denormalize(const SearchSpace& space, const UnitPoint& u);

/// normalize(denormalize(u)): moves discrete coordinates onto their grid.
UnitPoint snap(const SearchSpace& space, const UnitPoint& u);

}  // namespace swarmopt
