#include "nfg/kernel.h"

#include <cmath>
#include <vector>

#include "nfg/errors.h"

namespace nfg {

SEKernel::SEKernel(double variance, double length_scale)
    : variance_(variance), length_scale_(length_scale) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw ConfigError("kernel variance must be positive");
  }
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw ConfigError("kernel length scale must be positive");
  }
}

double SEKernel::operator()(double x, double x_prime) const {
  const double r = x - x_prime;
  return variance_ * std::exp(-(r * r) / (2.0 * length_scale_ * length_scale_));
}

double default_regularization(const SEKernel& kernel) { return 1e-6 * kernel.variance(); }

Eigen::MatrixXd kernel_matrix(std::span<const double> times, const SEKernel& kernel) {
  const auto m = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    k(i, i) = kernel.variance();
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double value = kernel(times[i], times[j]);
      k(i, j) = value;
      k(j, i) = value;
    }
  }
  return k;
}

Eigen::MatrixXd kernel_matrix(const TimeGrid& grid, const SEKernel& kernel) {
  std::vector<double> times(grid.steps());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = grid.time(i);
  return kernel_matrix(times, kernel);
}

double CovarianceFactor::reconstruction_error() const {
  return (lower_ * lower_.transpose() - regularized_).cwiseAbs().maxCoeff();
}

CovarianceFactor factorize(const Eigen::MatrixXd& kernel, double regularization) {
  if (kernel.rows() != kernel.cols() || kernel.rows() == 0) {
    throw ConfigError("kernel matrix must be square and non-empty");
  }
  if (!(regularization > 0.0) || !std::isfinite(regularization)) {
    throw ConfigError("regularization must be positive");
  }
  const double scale = std::max(1.0, kernel.cwiseAbs().maxCoeff());
  if ((kernel - kernel.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("kernel matrix is not symmetric");
  }
  Eigen::MatrixXd regularized = kernel;
  regularized.diagonal().array() += regularization;
  Eigen::LLT<Eigen::MatrixXd> llt(regularized);
  if (llt.info() != Eigen::Success) {
    throw ConfigError("Cholesky factorization failed; kernel is not positive semi-definite");
  }
  Eigen::MatrixXd lower = llt.matrixL();
  return CovarianceFactor(std::move(lower), std::move(regularized), regularization);
}

}  // namespace nfg
