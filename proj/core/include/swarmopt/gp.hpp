#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "swarmopt/error.hpp"

namespace swarmopt::gp {

/// Squared-exponential ARD kernel hyperparameters.
struct KernelHyper {
  double signal_variance = 1.0;
  std::vector<double> length_scales;
  double noise_variance = 0.0;

  /// Same length-scale on every one of `dims` axes.
  static KernelHyper isotropic(std::size_t dims, double signal_variance, double length_scale,
                               double noise_variance);

  bool operator==(const KernelHyper&) const = default;
};

void validate(const KernelHyper& hyper, std::size_t dims);

/// sigma_f^2 * exp(-1/2 * sum_j ((a_j - b_j) / l_j)^2)
double kernel_eval(std::span<const double> a, std::span<const double> b, const KernelHyper& hyper);

/// Dense Gram matrix between the rows of `a` and the rows of `b`.
Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyper& hyper);

/// Jitter multipliers (times the mean Gram diagonal) tried in order until Cholesky succeeds.
inline constexpr double kJitterStart = 1e-10;
inline constexpr double kJitterMax = 1e-4;

/// Floor below which the target standard deviation is treated as 1.
inline constexpr double kStdFloor = 1e-12;

struct Prediction {
  double mean;
  double variance;
};

/// Exact GP regression model. Immutable after `fit`.
class GpModel {
 public:
  /// Prior-only model: mean 0, variance sigma_f^2 everywhere.
  static GpModel prior(KernelHyper hyper, std::size_t dims);

  /// Standardizes `targets`, factors K + (sigma_n^2 + jitter) I, and solves for the dual weights.
  /// Throws NotPositiveDefinite once the jitter ladder is exhausted.
  static GpModel fit(const Eigen::MatrixXd& inputs, std::span<const double> targets, KernelHyper hyper);

  Prediction predict(std::span<const double> x) const;

  /// Posterior variance before the clamp at zero, in standardized units.
  double raw_standardized_variance(std::span<const double> x) const;

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t dims() const { return dims_; }
  const Eigen::MatrixXd& train_inputs() const { return inputs_; }
  const Eigen::VectorXd& train_targets() const { return targets_; }
  /// Targets as passed to `fit`, before standardization.
  const std::vector<double>& observed_targets() const { return observed_; }
  double target_mean() const { return target_mean_; }
  double target_std() const { return target_std_; }
  const KernelHyper& hyper() const { return hyper_; }
  const Eigen::MatrixXd& chol_factor() const { return chol_; }
  const Eigen::VectorXd& dual_weights() const { return alpha_; }
  /// Absolute diagonal jitter that made the factorization succeed.
  double jitter() const { return jitter_; }

  /// -1/2 y^T alpha - sum log L_ii - n/2 log 2pi on the standardized targets.
  double log_marginal_likelihood() const;

  bool operator==(const GpModel& other) const;

 private:
  GpModel() = default;

  std::size_t dims_ = 0;
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  std::vector<double> observed_;
  double target_mean_ = 0.0;
  double target_std_ = 1.0;
  KernelHyper hyper_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
};

double log_marginal_likelihood(const Eigen::MatrixXd& inputs, std::span<const double> targets,
                               const KernelHyper& hyper);

/// Candidate grid searched by `select_hyperparameters`, in enumeration order.
std::vector<KernelHyper> hyperparameter_candidates(std::size_t dims);

/// Maximizes the log marginal likelihood over `hyperparameter_candidates`; first wins ties.
/// Flat targets carry no information, so the first candidate is returned for them.
KernelHyper select_hyperparameters(const Eigen::MatrixXd& inputs, std::span<const double> targets);

/// Row-stacks points into an n x d matrix.
Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t dims);

}  // namespace swarmopt::gp
