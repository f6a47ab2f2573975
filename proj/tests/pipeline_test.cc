#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "nfg/errors.h"
#include "nfg/pipeline.h"

namespace nfg {
namespace {

constexpr double kPi = std::numbers::pi;

WaypointPath path_1d(std::initializer_list<double> values, bool angular = false) {
  WaypointPath p;
  p.waypoints.resize(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) p.waypoints(i++, 0) = v;
  p.angular = {angular};
  return p;
}

// Reference unwrap (the numpy algorithm): wrap each increment into
// [-pi, pi), map -pi back to +pi for positive increments, accumulate.
std::vector<double> reference_unwrap(const std::vector<double>& x) {
  std::vector<double> out(x);
  double correction = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dd = x[i] - x[i - 1];
    double ddmod = std::fmod(std::fmod(dd + kPi, 2 * kPi) + 2 * kPi, 2 * kPi) - kPi;
    if (ddmod == -kPi && dd > 0) ddmod = kPi;
    double c = ddmod - dd;
    if (std::abs(dd) < kPi) c = 0.0;
    correction += c;
    out[i] = x[i] + correction;
  }
  return out;
}

TEST(UnwrapTest, ContinuousInputUnchanged) {
  const auto out = unwrap_angles(path_1d({0.0, 0.1}, true));
  EXPECT_EQ(out.waypoints(0, 0), 0.0);
  EXPECT_EQ(out.waypoints(1, 0), 0.1);
}

TEST(UnwrapTest, WrapsAcrossPi) {
  const auto out = unwrap_angles(path_1d({3.1, -3.1}, true));
  EXPECT_NEAR(out.waypoints(1, 0), 3.1 + (2 * kPi - 6.2), 1e-12);
  EXPECT_NEAR(out.waypoints(1, 0), 3.18318, 1e-5);
}

TEST(UnwrapTest, CumulativeCorrection) {
  const auto out = unwrap_angles(path_1d({0.0, 3.2, 6.4}, true));
  EXPECT_NEAR(out.waypoints(1, 0), 3.2 - 2 * kPi, 1e-12);
  EXPECT_NEAR(out.waypoints(2, 0), 6.4 - 4 * kPi, 1e-12);
}

TEST(UnwrapTest, MatchesReferenceOnRandomWalks) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(50);
    for (double& v : x) v = u(gen);
    WaypointPath p;
    p.waypoints = Eigen::Map<Eigen::MatrixXd>(x.data(), 50, 1);
    p.angular = {true};
    const auto out = unwrap_angles(p);
    const auto ref = reference_unwrap(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(out.waypoints(k, 0), ref[i], 1e-9);
      const double turns = (out.waypoints(k, 0) - x[i]) / (2 * kPi);
      EXPECT_NEAR(turns, std::round(turns), 1e-9);
      if (i > 0) {
        EXPECT_LE(std::abs(out.waypoints(k, 0) - out.waypoints(k - 1, 0)), kPi + 1e-12);
      }
    }
  }
}

TEST(UnwrapTest, OnlyFlaggedColumnsChange) {
  WaypointPath p;
  p.waypoints.resize(2, 2);
  p.waypoints << 3.1, 3.1, -3.1, -3.1;
  p.angular = {false, true};
  const auto out = unwrap_angles(p);
  EXPECT_EQ(out.waypoints(1, 0), -3.1);
  EXPECT_NEAR(out.waypoints(1, 1), 3.1 + (2 * kPi - 6.2), 1e-12);

  p.angular.clear();
  EXPECT_EQ(unwrap_angles(p).waypoints, p.waypoints);
}

TEST(MergeDuplicatesTest, DropsRepeatedWaypoints) {
  const auto out = merge_duplicate_waypoints(path_1d({0, 0, 1, 1, 1, 2, 0}));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out.waypoints(0, 0), 0);
  EXPECT_EQ(out.waypoints(1, 0), 1);
  EXPECT_EQ(out.waypoints(2, 0), 2);
  EXPECT_EQ(out.waypoints(3, 0), 0);
}

TEST(ArcLengthTest, Examples) {
  EXPECT_EQ(arc_length_times(path_1d({0, 1}), 5.0), (std::vector<double>{0.0, 5.0}));
  EXPECT_EQ(arc_length_times(path_1d({0, 1, 2}), 4.0), (std::vector<double>{0.0, 2.0, 4.0}));
  EXPECT_EQ(arc_length_times(path_1d({0, 3, 4}), 4.0), (std::vector<double>{0.0, 3.0, 4.0}));
}

TEST(ArcLengthTest, UsesEuclideanDistance) {
  WaypointPath p;
  p.waypoints.resize(3, 2);
  p.waypoints << 0, 0, 3, 4, 3, 9;  // segment lengths 5 and 5
  EXPECT_EQ(arc_length_times(p, 2.0), (std::vector<double>{0.0, 1.0, 2.0}));
}

TEST(ArcLengthTest, DegeneratePaths) {
  EXPECT_THROW(arc_length_times(path_1d({1.0}), 1.0), DegeneratePathError);
  EXPECT_THROW(arc_length_times(path_1d({2.0, 2.0, 2.0}), 1.0), DegeneratePathError);
}

TEST(ArcLengthTest, ScaleFree) {
  const auto base = path_1d({0.0, 0.7, -0.2, 1.9, 2.0});
  WaypointPath scaled = base;
  scaled.waypoints *= 8.0;
  EXPECT_EQ(arc_length_times(base, 3.0), arc_length_times(scaled, 3.0));
}

TEST(ArcLengthTest, MonotoneWithExactEndpoints) {
  const auto times = arc_length_times(path_1d({0.0, 0.3, 0.3001, -5.0, 2.0}), 1.0);
  EXPECT_EQ(times.front(), 0.0);
  EXPECT_EQ(times.back(), 1.0);
  for (std::size_t i = 1; i < times.size(); ++i) EXPECT_GE(times[i], times[i - 1]);
}

TEST(ResampleTest, MidpointOfSegment) {
  const auto p = path_1d({0.0, 1.0});
  const TimeGrid g(5.0, 100.0);
  const Trajectory t = resample(p, arc_length_times(p, 5.0), g);
  EXPECT_DOUBLE_EQ(t(250, 0), 0.5);
  EXPECT_EQ(t(0, 0), 0.0);
}

TEST(ResampleTest, SecondSegment) {
  const auto p = path_1d({0.0, 3.0, 4.0});
  const TimeGrid g(4.0, 100.0);
  const Trajectory t = resample(p, std::vector<double>{0.0, 3.0, 4.0}, g);
  EXPECT_DOUBLE_EQ(t(350, 0), 3.5);
  EXPECT_EQ(t(300, 0), 3.0);
}

TEST(ResampleTest, HorizonMismatchIsConfigError) {
  const auto p = path_1d({0.0, 1.0});
  EXPECT_THROW(resample(p, std::vector<double>{0.0, 2.0}, TimeGrid(1.0, 100.0)), ConfigError);
}

TEST(ResampleTest, RoundTripIsBitExact) {
  // Knots on every grid point plus the closing knot at the horizon.
  const TimeGrid g(1.0, 50.0);
  std::mt19937 gen(5);
  std::normal_distribution<double> n;
  WaypointPath p;
  p.waypoints.resize(51, 2);
  std::vector<double> times(51);
  for (Eigen::Index i = 0; i < 51; ++i) {
    p.waypoints(i, 0) = n(gen);
    p.waypoints(i, 1) = n(gen);
    times[static_cast<std::size_t>(i)] = i < 50 ? g.time(static_cast<std::size_t>(i)) : 1.0;
  }
  const Trajectory t = resample(p, times, g);
  EXPECT_EQ(t.values(), p.waypoints.topRows(50));
}

TEST(ResampleTest, RoundTripOnCoarserKnots) {
  // Piecewise-linear path with knots every 5 grid points: resampling the
  // grid values reproduces them exactly.
  const TimeGrid g(1.0, 100.0);
  WaypointPath p;
  p.waypoints.resize(21, 1);
  std::vector<double> times(21);
  for (Eigen::Index k = 0; k < 21; ++k) {
    p.waypoints(k, 0) = (k % 3) - 1.0;
    times[static_cast<std::size_t>(k)] = static_cast<double>(k * 5) / 100.0;
  }
  const Trajectory once = resample(p, times, g);
  WaypointPath again;
  again.waypoints.resize(101, 1);
  again.waypoints.topRows(100) = once.values();
  again.waypoints(100, 0) = p.waypoints(20, 0);
  std::vector<double> grid_times(101);
  for (std::size_t i = 0; i < 101; ++i) grid_times[i] = static_cast<double>(i) / 100.0;
  EXPECT_EQ(resample(again, grid_times, g).values(), once.values());
}

TEST(WaypointCsvTest, ParsesWithAndWithoutHeader) {
  std::stringstream with("q0,q1\n0,1\n2,3\n");
  const auto a = read_waypoint_csv(with);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.dims(), 2u);
  EXPECT_EQ(a.waypoints(1, 1), 3.0);

  std::stringstream without("0.5\n-1.5\n");
  const auto b = read_waypoint_csv(without);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.waypoints(1, 0), -1.5);
}

TEST(WaypointCsvTest, RejectsInconsistentColumns) {
  std::stringstream in("0,1\n2\n");
  EXPECT_THROW(read_waypoint_csv(in), ParseError);
  std::stringstream junk("0,1\n2,abc\n");
  EXPECT_THROW(read_waypoint_csv(junk), ParseError);
}

}  // namespace
}  // namespace nfg
