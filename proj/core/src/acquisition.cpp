#include "swarmopt/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace swarmopt::acquisition {

void validate(const AcquisitionSpec& spec) {
  if (!std::isfinite(spec.kappa) || !(spec.kappa > 0)) {
    throw Error(ErrorCode::InvalidConfig, "kappa must be finite and positive");
  }
  if (!std::isfinite(spec.xi) || spec.xi < 0) {
    throw Error(ErrorCode::InvalidConfig, "xi must be finite and non-negative");
  }
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double variance, double best, double xi) {
  if (!(variance > 0)) return 0.0;
  const double sigma = std::sqrt(variance);
  const double improvement = best - mean - xi;
  const double z = improvement / sigma;
  return std::max(improvement * normal_cdf(z) + sigma * normal_pdf(z), 0.0);
}

double lower_confidence_bound(double mean, double variance, double kappa) {
  return mean - kappa * std::sqrt(std::max(variance, 0.0));
}

double score(const gp::GpModel& model, const AcquisitionSpec& spec, double best, const UnitPoint& u) {
  const auto [mean, variance] = model.predict(u.coords);
  if (spec.kind == Kind::ExpectedImprovement) return expected_improvement(mean, variance, best, spec.xi);
  return -lower_confidence_bound(mean, variance, spec.kappa);
}

namespace {

double best_observed(const gp::GpModel& model) {
  const auto& y = model.observed_targets();
  return y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
}

UnitPoint row_as_unit(const Eigen::MatrixXd& m, Eigen::Index i) {
  UnitPoint u;
  u.coords.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) u.coords[static_cast<std::size_t>(j)] = m(i, j);
  return u;
}

bool has_row(const Eigen::MatrixXd& m, const UnitPoint& u) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    bool same = true;
    for (Eigen::Index j = 0; j < m.cols() && same; ++j) same = m(i, j) == u.coords[static_cast<std::size_t>(j)];
    if (same) return true;
  }
  return false;
}

Eigen::MatrixXd append_row(const Eigen::MatrixXd& m, const UnitPoint& u) {
  Eigen::MatrixXd out(m.rows() + 1, m.cols());
  out.topRows(m.rows()) = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out(m.rows(), j) = u.coords[static_cast<std::size_t>(j)];
  return out;
}

constexpr std::size_t kRandomFallbackTries = 64;
constexpr std::size_t kEnumerationCap = 1'000'000;

/// A uniformly drawn point that is neither a training input nor already in `visited`.
Point unvisited_point(const SearchSpace& space, const Eigen::MatrixXd& visited, Rng& rng) {
  for (std::size_t t = 0; t < kRandomFallbackTries; ++t) {
    Point p = sample_uniform(space, rng);
    if (!has_row(visited, normalize(space, p))) return p;
  }
  if (space.all_discrete() && space.grid_size() <= kEnumerationCap) {
    std::vector<Point> free;
    for (auto& p : grid_points(space)) {
      if (!has_row(visited, normalize(space, p))) free.push_back(std::move(p));
    }
    if (!free.empty()) return free[rng.index(free.size())];
  }
  throw Error(ErrorCode::BatchDegenerate, "no unvisited point left to complete the batch");
}

}  // namespace

std::vector<UnitPoint> candidate_set(const gp::GpModel& model, const SearchSpace& space, Rng& rng) {
  const std::size_t d = space.size();
  std::vector<UnitPoint> out;
  out.reserve(kUniformCandidates + kPerturbedIncumbents);
  for (std::size_t i = 0; i < kUniformCandidates; ++i) {
    UnitPoint u;
    u.coords.resize(d);
    for (auto& c : u.coords) c = rng.uniform();
    out.push_back(snap(space, u));
  }

  const auto& y = model.observed_targets();
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  const auto incumbents = std::min(kPerturbedIncumbents, order.size());
  for (std::size_t k = 0; k < incumbents; ++k) {
    UnitPoint u = row_as_unit(model.train_inputs(), static_cast<Eigen::Index>(order[k]));
    for (auto& c : u.coords) c = std::clamp(c + rng.normal(0.0, kPerturbationStd), 0.0, 1.0);
    out.push_back(snap(space, u));
  }
  return out;
}

Point propose(const gp::GpModel& model, const SearchSpace& space, const AcquisitionSpec& spec, Rng& rng) {
  const auto candidates = candidate_set(model, space, rng);
  const double best = best_observed(model);
  std::size_t arg = 0;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double s = score(model, spec, best, candidates[i]);
    if (s > top) {
      top = s;
      arg = i;
    }
  }
  return denormalize(space, candidates[arg]);
}

double lie_value(std::span<const double> observed, LieStrategy lie) {
  if (observed.empty()) throw Error(ErrorCode::NoCompletedTrials, "constant liar needs observed targets");
  switch (lie) {
    case LieStrategy::ConstantLiarMin: return *std::min_element(observed.begin(), observed.end());
    case LieStrategy::ConstantLiarMax: return *std::max_element(observed.begin(), observed.end());
    case LieStrategy::ConstantLiarMean:
      return std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
  }
  return 0.0;
}

std::vector<Point> propose_batch(const gp::GpModel& model, const SearchSpace& space, const AcquisitionSpec& spec,
                                 std::size_t q, LieStrategy lie, Rng& rng) {
  if (q == 0) throw Error(ErrorCode::InvalidConfig, "batch size must be positive");
  const double lie_y = lie_value(model.observed_targets(), lie);

  std::vector<Point> batch;
  batch.reserve(q);
  Eigen::MatrixXd batch_rows(0, static_cast<Eigen::Index>(space.size()));
  gp::GpModel shadow = model;
  while (batch.size() < q) {
    Point p = propose(shadow, space, spec, rng);
    UnitPoint u = normalize(space, p);
    if (has_row(batch_rows, u)) {
      p = unvisited_point(space, shadow.train_inputs(), rng);
      u = normalize(space, p);
    }
    batch.push_back(p);
    batch_rows = append_row(batch_rows, u);
    if (batch.size() == q) break;

    std::vector<double> targets = shadow.observed_targets();
    targets.push_back(lie_y);
    shadow = gp::GpModel::fit(append_row(shadow.train_inputs(), u), targets, model.hyper());
  }
  return batch;
}

}  // namespace swarmopt::acquisition
