#include "swarmopt/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

namespace swarmopt::gp {

KernelHyper KernelHyper::isotropic(std::size_t dims, double signal_variance, double length_scale,
                                   double noise_variance) {
  return KernelHyper{signal_variance, std::vector<double>(dims, length_scale), noise_variance};
}

void validate(const KernelHyper& hyper, std::size_t dims) {
  if (!std::isfinite(hyper.signal_variance) || !(hyper.signal_variance > 0)) {
    throw Error(ErrorCode::InvalidConfig, "signal variance must be finite and positive");
  }
  if (hyper.length_scales.size() != dims) {
    throw Error(ErrorCode::InvalidConfig, "expected " + std::to_string(dims) + " length-scales");
  }
  for (double l : hyper.length_scales) {
    if (!std::isfinite(l) || !(l > 0)) {
      throw Error(ErrorCode::InvalidConfig, "length-scales must be finite and positive");
    }
  }
  if (!std::isfinite(hyper.noise_variance) || hyper.noise_variance < 0) {
    throw Error(ErrorCode::InvalidConfig, "noise variance must be finite and non-negative");
  }
}

double kernel_eval(std::span<const double> a, std::span<const double> b, const KernelHyper& hyper) {
  double r2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = (a[j] - b[j]) / hyper.length_scales[j];
    r2 += d * d;
  }
  return hyper.signal_variance * std::exp(-0.5 * r2);
}

namespace {

std::span<const double> row_span(const Eigen::MatrixXd& m, Eigen::Index i, std::vector<double>& scratch) {
  scratch.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) scratch[static_cast<std::size_t>(j)] = m(i, j);
  return scratch;
}

}  // namespace

Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyper& hyper) {
  Eigen::MatrixXd k(a.rows(), b.rows());
  std::vector<double> ra, rb;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto sa = row_span(a, i, ra);
    for (Eigen::Index j = 0; j < b.rows(); ++j) k(i, j) = kernel_eval(sa, row_span(b, j, rb), hyper);
  }
  return k;
}

GpModel GpModel::prior(KernelHyper hyper, std::size_t dims) {
  validate(hyper, dims);
  GpModel m;
  m.dims_ = dims;
  m.inputs_.resize(0, static_cast<Eigen::Index>(dims));
  m.hyper_ = std::move(hyper);
  return m;
}

GpModel GpModel::fit(const Eigen::MatrixXd& inputs, std::span<const double> targets, KernelHyper hyper) {
  const auto n = inputs.rows();
  const auto dims = static_cast<std::size_t>(inputs.cols());
  if (static_cast<std::size_t>(n) != targets.size()) {
    throw Error(ErrorCode::InvalidConfig, "input rows and targets differ in length");
  }
  if (n == 0) return prior(std::move(hyper), dims);
  validate(hyper, dims);

  GpModel m;
  m.dims_ = dims;
  m.inputs_ = inputs;
  m.observed_.assign(targets.begin(), targets.end());
  m.hyper_ = std::move(hyper);

  double mean = 0.0;
  for (double y : targets) mean += y;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double y : targets) var += (y - mean) * (y - mean);
  double sd = std::sqrt(var / static_cast<double>(n));
  if (!(sd > kStdFloor)) sd = 1.0;
  m.target_mean_ = mean;
  m.target_std_ = sd;
  m.targets_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m.targets_(i) = (targets[static_cast<std::size_t>(i)] - mean) / sd;

  Eigen::MatrixXd k = gram(inputs, inputs, m.hyper_);
  const double diag_mean = k.diagonal().mean();
  k.diagonal().array() += m.hyper_.noise_variance;

  for (double level = kJitterStart; level <= kJitterMax * (1 + 1e-9); level *= 10.0) {
    const double jitter = level * diag_mean;
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() != Eigen::Success) continue;
    Eigen::MatrixXd l = llt.matrixL();
    if (!l.allFinite() || !(l.diagonal().minCoeff() > 0)) continue;
    Eigen::VectorXd alpha = llt.solve(m.targets_);
    if (!alpha.allFinite()) continue;
    m.chol_ = std::move(l);
    m.alpha_ = std::move(alpha);
    m.jitter_ = jitter;
    return m;
  }
  throw Error(ErrorCode::NotPositiveDefinite,
              "Gram matrix not positive definite after jitter up to 1e-4 x mean diagonal");
}

double GpModel::raw_standardized_variance(std::span<const double> x) const {
  if (size() == 0) return hyper_.signal_variance;
  Eigen::VectorXd ks(inputs_.rows());
  std::vector<double> scratch;
  for (Eigen::Index i = 0; i < inputs_.rows(); ++i) ks(i) = kernel_eval(row_span(inputs_, i, scratch), x, hyper_);
  const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(ks);
  return kernel_eval(x, x, hyper_) - v.squaredNorm();
}

Prediction GpModel::predict(std::span<const double> x) const {
  if (size() == 0) return {0.0, hyper_.signal_variance};
  Eigen::VectorXd ks(inputs_.rows());
  std::vector<double> scratch;
  for (Eigen::Index i = 0; i < inputs_.rows(); ++i) ks(i) = kernel_eval(row_span(inputs_, i, scratch), x, hyper_);
  const double mean_std = ks.dot(alpha_);
  const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(ks);
  const double var_std = std::max(kernel_eval(x, x, hyper_) - v.squaredNorm(), 0.0);
  return {mean_std * target_std_ + target_mean_, var_std * target_std_ * target_std_};
}

double GpModel::log_marginal_likelihood() const {
  const auto n = static_cast<double>(size());
  return -0.5 * targets_.dot(alpha_) - chol_.diagonal().array().log().sum() -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

bool GpModel::operator==(const GpModel& o) const {
  return dims_ == o.dims_ && inputs_ == o.inputs_ && targets_ == o.targets_ && observed_ == o.observed_ &&
         target_mean_ == o.target_mean_ && target_std_ == o.target_std_ && hyper_ == o.hyper_ &&
         chol_ == o.chol_ && alpha_ == o.alpha_ && jitter_ == o.jitter_;
}

double log_marginal_likelihood(const Eigen::MatrixXd& inputs, std::span<const double> targets,
                               const KernelHyper& hyper) {
  return GpModel::fit(inputs, targets, hyper).log_marginal_likelihood();
}

std::vector<KernelHyper> hyperparameter_candidates(std::size_t dims) {
  static constexpr double kSignal[] = {0.25, 1.0, 4.0};
  static constexpr double kLength[] = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  static constexpr double kNoise[] = {1e-8, 1e-4, 1e-2};
  std::vector<KernelHyper> out;
  out.reserve(std::size(kSignal) * std::size(kLength) * std::size(kNoise));
  for (double s : kSignal)
    for (double l : kLength)
      for (double nv : kNoise) out.push_back(KernelHyper::isotropic(dims, s, l, nv));
  return out;
}

KernelHyper select_hyperparameters(const Eigen::MatrixXd& inputs, std::span<const double> targets) {
  const auto candidates = hyperparameter_candidates(static_cast<std::size_t>(inputs.cols()));

  double mean = 0.0;
  for (double y : targets) mean += y;
  mean /= static_cast<double>(std::max<std::size_t>(targets.size(), 1));
  double var = 0.0;
  for (double y : targets) var += (y - mean) * (y - mean);
  if (targets.empty() || !(std::sqrt(var / static_cast<double>(targets.size())) > kStdFloor)) {
    return candidates.front();
  }

  const KernelHyper* best = nullptr;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    double lml;
    try {
      lml = log_marginal_likelihood(inputs, targets, c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositiveDefinite) throw;
      continue;
    }
    if (!std::isfinite(lml)) continue;
    if (best == nullptr || lml > best_lml) {
      best = &c;
      best_lml = lml;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorCode::AllCandidatesFailed, "no hyperparameter candidate produced a usable fit");
  }
  return *best;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t dims) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dims; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

}  // namespace swarmopt::gp
