#pragma once

// Reference GP computations via explicit dense inverse and LU determinant.
// Independent of the Cholesky path in swarmopt::gp; used only by tests.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct DenseGp {
  Eigen::MatrixXd x;      // n x d
  Eigen::VectorXd ys;     // standardized targets
  double mean = 0.0;
  double sd = 1.0;
  double signal = 1.0;
  std::vector<double> ls;
  Eigen::MatrixXd k_reg;  // K + (noise + jitter) I
  Eigen::MatrixXd k_inv;
};

inline double rbf(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b, double signal,
                  const std::vector<double>& ls) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double t = (a(j) - b(j)) / ls[static_cast<std::size_t>(j)];
    s += t * t;
  }
  return signal * std::exp(-0.5 * s);
}

inline DenseGp build(const Eigen::MatrixXd& x, const std::vector<double>& y, double signal,
                     const std::vector<double>& ls, double noise, double jitter) {
  DenseGp g;
  g.x = x;
  g.signal = signal;
  g.ls = ls;
  const auto n = static_cast<Eigen::Index>(y.size());
  double m = 0.0;
  for (double v : y) m += v;
  m /= static_cast<double>(n);
  double var = 0.0;
  for (double v : y) var += (v - m) * (v - m);
  double sd = std::sqrt(var / static_cast<double>(n));
  if (!(sd > 1e-12)) sd = 1.0;
  g.mean = m;
  g.sd = sd;
  g.ys.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) g.ys(i) = (y[static_cast<std::size_t>(i)] - m) / sd;
  g.k_reg.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g.k_reg(i, j) = rbf(x.row(i), x.row(j), signal, ls);
  g.k_reg.diagonal().array() += noise + jitter;
  g.k_inv = g.k_reg.fullPivLu().inverse();
  return g;
}

struct Posterior {
  double mean;
  double variance;
};

/// De-standardized mean and variance (variance not clamped).
inline Posterior predict(const DenseGp& g, const Eigen::RowVectorXd& q) {
  Eigen::VectorXd ks(g.x.rows());
  for (Eigen::Index i = 0; i < g.x.rows(); ++i) ks(i) = rbf(g.x.row(i), q, g.signal, g.ls);
  const double m = ks.dot(g.k_inv * g.ys);
  const double v = g.signal - ks.dot(g.k_inv * ks);
  return {m * g.sd + g.mean, v * g.sd * g.sd};
}

inline double log_marginal_likelihood(const DenseGp& g) {
  const double n = static_cast<double>(g.ys.size());
  const double logdet = std::log(g.k_reg.fullPivLu().determinant());
  return -0.5 * g.ys.dot(g.k_inv * g.ys) - 0.5 * logdet - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

}  // namespace oracle
