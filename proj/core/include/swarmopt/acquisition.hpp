#pragma once

#include <cstddef>
#include <vector>

#include "swarmopt/gp.hpp"
#include "swarmopt/random.hpp"
#include "swarmopt/space.hpp"

namespace swarmopt::acquisition {

enum class Kind { ExpectedImprovement, LowerConfidenceBound };

struct AcquisitionSpec {
  Kind kind = Kind::ExpectedImprovement;
  double kappa = 1.96;  // LCB only
  double xi = 0.0;      // EI only

  bool operator==(const AcquisitionSpec&) const = default;
};

void validate(const AcquisitionSpec& spec);

/// Value used for the fabricated observation of each pending batch member.
enum class LieStrategy { ConstantLiarMin, ConstantLiarMax, ConstantLiarMean };

double normal_pdf(double z);
double normal_cdf(double z);

/// EI for minimization. Zero when the variance is zero.
double expected_improvement(double mean, double variance, double best, double xi);

/// mean - kappa * sqrt(variance); smaller is better.
double lower_confidence_bound(double mean, double variance, double kappa);

/// Candidate-set search sizes.
inline constexpr std::size_t kUniformCandidates = 1024;
inline constexpr std::size_t kPerturbedIncumbents = 10;
inline constexpr double kPerturbationStd = 0.05;

/// Score where larger is better: EI, or negated LCB.
double score(const gp::GpModel& model, const AcquisitionSpec& spec, double best, const UnitPoint& u);

/// The candidate set scored by `propose`, already snapped onto discrete grids.
std::vector<UnitPoint> candidate_set(const gp::GpModel& model, const SearchSpace& space, Rng& rng);

/// Best-scoring candidate. Requires a model fitted on at least one point.
Point propose(const gp::GpModel& model, const SearchSpace& space, const AcquisitionSpec& spec, Rng& rng);

double lie_value(std::span<const double> observed, LieStrategy lie);

/// Greedy constant-liar batch of q pairwise-distinct points. Shadow refits keep the
/// model's hyperparameters; the model itself is not modified.
std::vector<Point> propose_batch(const gp::GpModel& model, const SearchSpace& space, const AcquisitionSpec& spec,
                                 std::size_t q, LieStrategy lie, Rng& rng);

}  // namespace swarmopt::acquisition
