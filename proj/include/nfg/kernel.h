#pragma once

#include <span>

#include <Eigen/Dense>

#include "nfg/time_grid.h"

namespace nfg {

// k(x, x') = variance * exp(-|x - x'|^2 / (2 * length_scale^2)).
class SEKernel {
 public:
  SEKernel(double variance, double length_scale);

  double variance() const { return variance_; }
  double length_scale() const { return length_scale_; }

  double operator()(double x, double x_prime) const;

 private:
  double variance_;
  double length_scale_;
};

// Relative regularization used when none is configured: 1e-6 * variance.
double default_regularization(const SEKernel& kernel);

// K_ij = k(t_i, t_j). Filled from the upper triangle and mirrored so the
// result is exactly symmetric with K_ii == variance.
Eigen::MatrixXd kernel_matrix(std::span<const double> times, const SEKernel& kernel);
Eigen::MatrixXd kernel_matrix(const TimeGrid& grid, const SEKernel& kernel);

// Lower-triangular L with L * L^T = K + reg * I.
class CovarianceFactor {
 public:
  const Eigen::MatrixXd& lower() const { return lower_; }
  double regularization() const { return regularization_; }
  Eigen::Index size() const { return lower_.rows(); }

  // K + reg * I as seen by the factor.
  const Eigen::MatrixXd& regularized() const { return regularized_; }

  // max |(L L^T)_ij - (K + reg I)_ij|.
  double reconstruction_error() const;

 private:
  friend CovarianceFactor factorize(const Eigen::MatrixXd& kernel, double regularization);
  CovarianceFactor(Eigen::MatrixXd lower, Eigen::MatrixXd regularized, double regularization)
      : lower_(std::move(lower)),
        regularized_(std::move(regularized)),
        regularization_(regularization) {}

  Eigen::MatrixXd lower_;
  Eigen::MatrixXd regularized_;
  double regularization_;
};

// Cholesky factor of kernel + regularization * I. Throws ConfigError for a
// non-square or asymmetric kernel, regularization <= 0, or a failed
// factorization.
CovarianceFactor factorize(const Eigen::MatrixXd& kernel, double regularization);

}  // namespace nfg
