#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "nfg/errors.h"
#include "nfg/kernel.h"

namespace nfg {
namespace {

TEST(SEKernelTest, Formula) {
  const SEKernel k(1.0, 1.0);
  EXPECT_DOUBLE_EQ(k(0.0, 1.0), std::exp(-0.5));
  EXPECT_NEAR(k(2.0, 1.0), 0.606531, 1e-6);
  EXPECT_EQ(k(0.3, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(SEKernel(0.29, 0.22)(0.0, 0.22), 0.29 * std::exp(-0.5));
}

TEST(SEKernelTest, RejectsNonPositiveParameters) {
  EXPECT_THROW(SEKernel(0.0, 1.0), ConfigError);
  EXPECT_THROW(SEKernel(1.0, -0.1), ConfigError);
}

TEST(SEKernelTest, DefaultRegularizationIsRelative) {
  EXPECT_DOUBLE_EQ(default_regularization(SEKernel(0.29, 0.22)), 0.29e-6);
}

TEST(KernelMatrixTest, BenchmarkGridProperties) {
  const SEKernel k(0.29, 0.22);
  const Eigen::MatrixXd K = kernel_matrix(TimeGrid(1.0, 100.0), k);
  ASSERT_EQ(K.rows(), 100);
  ASSERT_EQ(K.cols(), 100);
  for (Eigen::Index i = 0; i < 100; ++i) {
    EXPECT_EQ(K(i, i), 0.29);
    for (Eigen::Index j = 0; j < 100; ++j) {
      EXPECT_EQ(K(i, j), K(j, i));
      if (j > i) EXPECT_LT(K(i, j), K(i, j - 1));  // decays with distance
    }
  }
}

TEST(KernelMatrixTest, ExplicitTimes) {
  const std::vector<double> times{0.0, 1.0, 3.0};
  const Eigen::MatrixXd K = kernel_matrix(times, SEKernel(1.0, 1.0));
  EXPECT_DOUBLE_EQ(K(0, 1), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(K(1, 2), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(K(0, 2), std::exp(-4.5));
}

TEST(KernelMatrixTest, RegularizedEigenvaluesAtLeastLambda) {
  const double lambda = 1e-3;
  const Eigen::MatrixXd K = kernel_matrix(TimeGrid(0.2, 100.0), SEKernel(0.29, 0.22));
  const Eigen::MatrixXd Kl = K + lambda * Eigen::MatrixXd::Identity(20, 20);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Kl);
  EXPECT_GE(solver.eigenvalues().minCoeff(), lambda * (1 - 1e-6));
}

TEST(FactorizeTest, ZeroKernelGivesIdentity) {
  const auto f = factorize(Eigen::MatrixXd::Zero(4, 4), 1.0);
  EXPECT_TRUE(f.lower().isApprox(Eigen::MatrixXd::Identity(4, 4), 0.0));
  EXPECT_EQ(f.regularization(), 1.0);
  EXPECT_EQ(f.size(), 4);
}

TEST(FactorizeTest, IdentityKernelGivesSqrtTwo) {
  const auto f = factorize(Eigen::MatrixXd::Identity(3, 3), 1.0);
  EXPECT_TRUE(f.lower().isApprox(std::sqrt(2.0) * Eigen::MatrixXd::Identity(3, 3), 1e-15));
}

TEST(FactorizeTest, BenchmarkKernelReconstruction) {
  const SEKernel k(0.29, 0.22);
  const double lambda = 1e-6;
  const auto f = factorize(kernel_matrix(TimeGrid(1.0, 100.0), k), lambda);
  // Independent reconstruction, not the factor's own helper.
  const Eigen::MatrixXd target =
      kernel_matrix(TimeGrid(1.0, 100.0), k) + lambda * Eigen::MatrixXd::Identity(100, 100);
  const double err = (f.lower() * f.lower().transpose() - target).cwiseAbs().maxCoeff();
  EXPECT_LE(err, 1e-8 * (0.29 + lambda));
  EXPECT_NEAR(f.reconstruction_error(), err, 1e-15);
  EXPECT_GT(f.lower().diagonal().minCoeff(), 0.0);
  EXPECT_TRUE(f.lower().isLowerTriangular());
}

TEST(FactorizeTest, RejectsBadInput) {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.5;
  EXPECT_THROW(factorize(asym, 1e-3), ConfigError);
  EXPECT_THROW(factorize(Eigen::MatrixXd::Identity(3, 3), 0.0), ConfigError);
  EXPECT_THROW(factorize(Eigen::MatrixXd::Identity(3, 3), -1.0), ConfigError);
  EXPECT_THROW(factorize(Eigen::MatrixXd::Zero(3, 2), 1.0), ConfigError);
}

TEST(FactorizeTest, SucceedsForSingularPsdKernel) {
  const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(5, -1.0, 1.0);
  const Eigen::MatrixXd rank_one = v * v.transpose();
  EXPECT_NO_THROW(factorize(rank_one, 1e-9));
}

}  // namespace
}  // namespace nfg
