#include "swarmopt/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace swarmopt {

Dimension Dimension::continuous(std::string name, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidSpace,
                "continuous dimension '" + name + "' needs finite lo < hi");
  }
  return Dimension(std::move(name), Continuous{lo, hi});
}

Dimension Dimension::discrete(std::string name, std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::InvalidSpace, "discrete dimension '" + name + "' has no values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || (i > 0 && !(values[i - 1] < values[i]))) {
      throw Error(ErrorCode::InvalidSpace, "discrete dimension '" + name +
                                               "' values must be finite and strictly increasing");
    }
  }
  return Dimension(std::move(name), Discrete{std::move(values)});
}

Dimension Dimension::stepped(std::string name, double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || !(step > 0) || hi < lo) {
    throw Error(ErrorCode::InvalidSpace, "stepped dimension '" + name + "' needs lo <= hi, step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-6)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return discrete(std::move(name), std::move(values));
}

bool Dimension::contains(double x) const {
  if (!std::isfinite(x)) return false;
  if (is_discrete()) {
    const auto& values = as_discrete().values;
    return std::binary_search(values.begin(), values.end(), x);
  }
  const auto& c = as_continuous();
  return c.lo <= x && x <= c.hi;
}

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::InvalidSpace, "search space needs at least one dimension");
  std::unordered_set<std::string> names;
  for (const auto& d : dims_) {
    if (!names.insert(d.name()).second) {
      throw Error(ErrorCode::InvalidSpace, "duplicate dimension name '" + d.name() + "'");
    }
  }
}

bool SearchSpace::all_discrete() const {
  return std::all_of(dims_.begin(), dims_.end(), [](const Dimension& d) { return d.is_discrete(); });
}

bool SearchSpace::contains(const Point& p) const {
  if (p.coords.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (!dims_[i].contains(p.coords[i])) return false;
  }
  return true;
}

std::size_t SearchSpace::grid_size() const {
  std::size_t total = 1;
  for (const auto& d : dims_) {
    if (!d.is_discrete()) {
      throw Error(ErrorCode::ContinuousDimensionInGrid,
                  "dimension '" + d.name() + "' is continuous; grid search needs discrete values");
    }
    const auto m = d.as_discrete().values.size();
    if (total > std::numeric_limits<std::size_t>::max() / m) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= m;
  }
  return total;
}

Point grid_point_at(const SearchSpace& space, std::size_t index) {
  const auto total = space.grid_size();
  if (index >= total) throw Error(ErrorCode::GridExhausted, "grid index past the last cell");
  Point p;
  p.coords.resize(space.size());
  for (std::size_t i = space.size(); i-- > 0;) {
    const auto& values = space[i].as_discrete().values;
    p.coords[i] = values[index % values.size()];
    index /= values.size();
  }
  return p;
}

std::vector<Point> grid_points(const SearchSpace& space) {
  const auto total = space.grid_size();
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) out.push_back(grid_point_at(space, k));
  return out;
}

UnitPoint normalize(const SearchSpace& space, const Point& p) {
  if (p.coords.size() != space.size()) {
    throw Error(ErrorCode::PointOutOfSpace, "point dimensionality does not match the space");
  }
  UnitPoint u;
  u.coords.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& dim = space[i];
    const double x = p.coords[i];
    if (!dim.contains(x)) {
      throw Error(ErrorCode::PointOutOfSpace, "coordinate for '" + dim.name() + "' is outside its range");
    }
    if (dim.is_discrete()) {
      const auto& values = dim.as_discrete().values;
      const auto m = values.size();
      if (m == 1) {
        u.coords.push_back(0.5);
      } else {
        const auto idx = static_cast<double>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
        u.coords.push_back(idx / static_cast<double>(m - 1));
      }
    } else {
      const auto& [lo, hi] = dim.as_continuous();
      u.coords.push_back((x - lo) / (hi - lo));
    }
  }
  return u;
}

Point denormalize(const SearchSpace& space, const UnitPoint& u) {
  if (u.coords.size() != space.size()) {
    throw Error(ErrorCode::UnitCoordinateOutOfRange, "unit point dimensionality does not match the space");
  }
  Point p;
  p.coords.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double v = u.coords[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::UnitCoordinateOutOfRange, "unit coordinate outside [0, 1]");
    }
    const auto& dim = space[i];
    if (dim.is_discrete()) {
      const auto& values = dim.as_discrete().values;
      const auto idx = static_cast<std::size_t>(std::round(v * static_cast<double>(values.size() - 1)));
      p.coords.push_back(values[idx]);
    } else {
      const auto& [lo, hi] = dim.as_continuous();
      p.coords.push_back(std::clamp(lo + v * (hi - lo), lo, hi));
    }
  }
  return p;
}

UnitPoint snap(const SearchSpace& space, const UnitPoint& u) {
  UnitPoint out = u;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!space[i].is_discrete()) continue;
    const auto m = space[i].as_discrete().values.size();
    if (m == 1) {
      out.coords[i] = 0.5;
    } else {
      const double scale = static_cast<double>(m - 1);
      out.coords[i] = std::round(u.coords[i] * scale) / scale;
    }
  }
  return out;
}

}  // namespace swarmopt
