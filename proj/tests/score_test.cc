#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "nfg/environment.h"
#include "nfg/errors.h"
#include "nfg/score.h"

namespace nfg {
namespace {

const BoxEnvironment kPaper = environment_preset("narrow-passage-v1");

// The four boxes as listed in the paper's environment table.
struct PaperBox {
  double t0, t1, y0, y1;
};
constexpr PaperBox kPaperBoxes[] = {
    {0.2, 0.25, -1.0, 4.0}, {0.4, 0.6, -2.0, 2.0}, {0.7, 1.0, 0.5, 5.0}, {0.7, 1.0, -5.0, -0.5}};

double oracle_penetration(double t, double y) {
  double s = 0.0;
  for (const auto& b : kPaperBoxes) {
    if (t >= b.t0 && t <= b.t1 && y >= b.y0 && y <= b.y1) {
      s = std::min(s, -std::min(y - b.y0, b.y1 - y));
    }
  }
  return s;
}

Trajectory random_trajectory(const TimeGrid& g, std::mt19937& gen, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Eigen::MatrixXd v(g.steps(), 1);
  for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, 0) = n(gen);
  return Trajectory(g, v);
}

TEST(EnvironmentTest, PresetMatchesPaperBoxes) {
  ASSERT_EQ(kPaper.boxes().size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& b = kPaper.boxes()[i];
    EXPECT_EQ(b.t_lo, kPaperBoxes[i].t0);
    EXPECT_EQ(b.t_hi, kPaperBoxes[i].t1);
    EXPECT_EQ(b.y_lo, kPaperBoxes[i].y0);
    EXPECT_EQ(b.y_hi, kPaperBoxes[i].y1);
  }
  EXPECT_TRUE(environment_preset("free-space").empty());
  EXPECT_THROW(environment_preset("no-such-env"), ConfigError);
}

TEST(EnvironmentTest, BoxValidation) {
  EXPECT_THROW(BoxObstacle(0.5, 0.5, 0.0, 1.0), ConfigError);
  EXPECT_THROW(BoxObstacle(0.0, 1.0, 2.0, 1.0), ConfigError);
}

TEST(PenetrationTest, Examples) {
  EXPECT_EQ(penetration_step(kPaper, 0.1, 3.0), 0.0);
  EXPECT_EQ(penetration_step(kPaper, 0.5, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(penetration_step(kPaper, 0.22, 0.6), -1.6);
}

TEST(PenetrationTest, ClosedFacesHaveZeroDepth) {
  const auto& b2 = kPaper.boxes()[1];
  EXPECT_TRUE(b2.contains(0.4, 2.0));
  EXPECT_TRUE(b2.contains(0.6, -2.0));
  EXPECT_EQ(penetration_step(kPaper, 0.5, 2.0), 0.0);
  EXPECT_EQ(penetration_step(kPaper, 0.4, 0.0), -2.0);
}

TEST(PenetrationTest, DenseSweepMatchesOracleAndIsContinuous) {
  double prev = penetration_step(kPaper, 0.5, -3.0);
  for (int k = 0; k <= 6000; ++k) {
    const double y = -3.0 + k * 1e-3;
    const double s = penetration_step(kPaper, 0.5, y);
    EXPECT_DOUBLE_EQ(s, oracle_penetration(0.5, y));
    EXPECT_LE(std::abs(s - prev), 1e-3 + 1e-12);
    prev = s;
  }
}

TEST(TrajectoryScoreTest, ZeroTrajectoryBruteForce) {
  const TimeGrid g(1.0, 100.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < 100; ++i) sum += oracle_penetration(static_cast<double>(i) / 100.0, 0.0);
  const double expected = sum / 100.0;
  EXPECT_DOUBLE_EQ(expected, -0.48);  // 6 steps at depth 1, 21 at depth 2
  EXPECT_DOUBLE_EQ(trajectory_score(kPaper, Trajectory::zeros(g), ScoreConfig{}), expected);
  const Eigen::VectorXd s = penetration_profile(kPaper, Trajectory::zeros(g));
  EXPECT_EQ((s.array() < 0).count(), 27);
  EXPECT_EQ(first_collision(kPaper, Trajectory::zeros(g)), std::optional<std::size_t>(20));
}

TEST(TrajectoryScoreTest, FreeSpaceConstantScoresOne) {
  const TimeGrid g(1.0, 100.0);
  const Trajectory c(g, Eigen::MatrixXd::Constant(100, 1, 3.0));
  EXPECT_EQ(trajectory_score(BoxEnvironment{}, c, ScoreConfig{}), 1.0);
  EXPECT_TRUE(is_collision_free(BoxEnvironment{}, c));
}

TEST(TrajectoryScoreTest, JerkBranch) {
  // c t^3 has jerk 6c everywhere; c = 100/6 gives average jerk 100.
  const TimeGrid g(1.0, 100.0);
  Eigen::MatrixXd v(100, 1);
  for (std::size_t i = 0; i < 100; ++i) {
    const double t = g.time(i);
    v(static_cast<Eigen::Index>(i), 0) = 100.0 / 6.0 * t * t * t;
  }
  const double f = trajectory_score(BoxEnvironment{}, Trajectory(g, v), ScoreConfig{});
  EXPECT_NEAR(f, std::exp(-0.01), 1e-9);
  EXPECT_NEAR(f, 0.990050, 1e-6);
}

TEST(TrajectoryScoreTest, RequiresOneDimension) {
  const TimeGrid g(1.0, 100.0);
  EXPECT_THROW(trajectory_score(kPaper, Trajectory::zeros(g, 2), ScoreConfig{}), PreconditionError);
}

TEST(TrajectoryScoreTest, FeasibleAlwaysBeatsInfeasible) {
  const TimeGrid g(1.0, 100.0);
  std::mt19937 gen(1);
  double worst_free = 2.0, best_hit = -2.0;
  for (int trial = 0; trial < 400; ++trial) {
    const Trajectory t = random_trajectory(g, gen, trial % 2 ? 3.0 : 0.3);
    const double f = trajectory_score(kPaper, t, ScoreConfig{});
    if (is_collision_free(kPaper, t)) {
      worst_free = std::min(worst_free, f);
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0);
    } else {
      best_hit = std::max(best_hit, f);
      EXPECT_LE(f, 0.0);
    }
  }
  EXPECT_LE(best_hit, 0.0);
}

TEST(TrajectoryScoreTest, AddingObstacleNeverIncreasesScore) {
  const TimeGrid g(1.0, 100.0);
  const BoxEnvironment more = kPaper.with(BoxObstacle(0.05, 0.15, -0.5, 0.5));
  std::mt19937 gen(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Trajectory t = random_trajectory(g, gen, 2.0);
    EXPECT_LE(trajectory_score(more, t, ScoreConfig{}), trajectory_score(kPaper, t, ScoreConfig{}));
    EXPECT_LE(trajectory_score(kPaper, t, ScoreConfig{}),
              trajectory_score(BoxEnvironment{}, t, ScoreConfig{}));
  }
}

TEST(ExpTransformTest, Examples) {
  const ScoreConfig cfg{.lambda_jerk = 1e-4, .n_pow = 100.0};
  EXPECT_EQ(exp_transform(0.0, cfg), 1.0);
  EXPECT_EQ(exp_transform(0.0, ScoreConfig{.lambda_jerk = 0.0, .n_pow = 3.0}), 1.0);
  EXPECT_DOUBLE_EQ(exp_transform(1.0, cfg), std::exp(100.0));
  EXPECT_TRUE(std::isfinite(exp_transform(50.0, cfg)));
  EXPECT_EQ(exp_transform(50.0, cfg), std::exp(kExpClamp));
  EXPECT_EQ(exp_transform(-std::numeric_limits<double>::infinity(), cfg), 0.0);
  EXPECT_GT(exp_transform(-50.0, cfg), 0.0);
}

TEST(ExpTransformTest, MonotoneAndArgmaxPreserving) {
  const ScoreConfig cfg{};
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(-2.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores(20);
    for (double& s : scores) s = u(gen);
    const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
    std::vector<double> w(20);
    for (std::size_t i = 0; i < 20; ++i) w[i] = exp_transform(scores[i], cfg);
    EXPECT_EQ(std::max_element(w.begin(), w.end()) - w.begin(), best);
    const auto sw = shifted_weights(scores, cfg.n_pow);
    EXPECT_EQ(std::max_element(sw.begin(), sw.end()) - sw.begin(), best);
    EXPECT_EQ(sw[static_cast<std::size_t>(best)], 1.0);
  }
  EXPECT_GT(exp_transform(0.5, cfg), exp_transform(0.4, cfg));
}

TEST(ShiftedWeightsTest, ProportionalToRawWeights) {
  const std::vector<double> scores{-0.1, 0.0, -0.05};
  const auto w = shifted_weights(scores, 10.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(w[i], std::exp(10.0 * scores[i]));
  const double inf = std::numeric_limits<double>::infinity();
  const auto z = shifted_weights(std::vector<double>{-inf, -inf}, 10.0);
  EXPECT_EQ(z, (std::vector<double>{0.0, 0.0}));
  const auto mixed = shifted_weights(std::vector<double>{-inf, 0.3}, 10.0);
  EXPECT_EQ(mixed, (std::vector<double>{0.0, 1.0}));
}

TEST(ScoreConfigTest, Validation) {
  EXPECT_THROW((ScoreConfig{.lambda_jerk = 1e-4, .n_pow = 0.0}).validate(), ConfigError);
  EXPECT_THROW((ScoreConfig{.lambda_jerk = -1.0, .n_pow = 1.0}).validate(), ConfigError);
  EXPECT_NO_THROW(ScoreConfig{}.validate());
}

}  // namespace
}  // namespace nfg
