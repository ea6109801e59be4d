#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "msrimg/errors.hpp"
#include "msrimg/metrics.hpp"

using namespace msrimg;

namespace {

ImageMap blank(double step = 0.02) {
  ImageMap map;
  map.grid = make_grid({-1, 1, -3, -1}, step);
  map.values.assign(map.grid.size(), 0.0);
  map.lambda_minus = 0.1;
  return map;
}

}  // namespace

TEST(Metrics, TruthSupportedMap) {
  const auto curve = ParametricCurve::sigma1();
  ImageMap map = blank();
  // W = 1 on the grid node nearest to each dense curve sample
  for (const auto& p : dense_trace(curve, 0.005).nodes) {
    const auto i = static_cast<std::size_t>(std::lround((p.x() + 1) / 0.02));
    const auto r = static_cast<std::size_t>(std::lround((p.y() + 3) / 0.02));
    map.values[r * map.grid.nx + i] = 1.0;
  }
  const PeakMetrics m = peak_metrics(map, {curve}, 0.5);
  EXPECT_LE(m.false_alarm_distance, 0.02);
  EXPECT_LE(m.coverage_distance, 0.02);
  EXPECT_EQ(m.peak_value, 1.0);
  EXPECT_EQ(m.background_mean, 0.0);
}

TEST(Metrics, UniformMapCoversEverything) {
  const auto curve = ParametricCurve::polyline({Vec2(0, -2), Vec2(0.5, -2)});
  ImageMap map = blank(0.1);
  map.values.assign(map.grid.size(), 3.0);
  const PeakMetrics m = peak_metrics(map, {curve}, 0.7);
  EXPECT_EQ(m.superlevel_count, map.grid.size());
  // farthest corner from the segment is (-1, -3) or (-1, -1)
  EXPECT_NEAR(m.false_alarm_distance, std::hypot(1.0, 1.0), 1e-12);
  EXPECT_LE(m.coverage_distance, 0.05 + 1e-12);
  EXPECT_EQ(m.background_mean, 3.0);
}

TEST(Metrics, ZeroMapHasEmptySuperlevelSet) {
  const PeakMetrics m = peak_metrics(blank(0.5), {ParametricCurve::sigma1()}, 0.7);
  EXPECT_EQ(m.superlevel_count, 0u);
  EXPECT_TRUE(std::isinf(m.coverage_distance));
}

TEST(Metrics, BackgroundExcludesTube) {
  const auto curve = ParametricCurve::polyline({Vec2(-1, -2), Vec2(1, -2)});
  ImageMap map = blank(0.1);
  for (std::size_t i = 0; i < map.grid.size(); ++i)
    map.values[i] = std::abs(map.grid.node(i).y() + 2) <= 0.1 + 1e-9 ? 10.0 : 1.0;
  EXPECT_NEAR(peak_metrics(map, {curve}, 0.5, 0.15).background_mean, 1.0, 1e-15);
  EXPECT_NEAR(background_mean(map, {curve}, 0.15), 1.0, 1e-15);
}

TEST(Metrics, RejectsBadLevel) {
  EXPECT_THROW(peak_metrics(blank(0.5), {ParametricCurve::sigma1()}, 1.0), DomainError);
  EXPECT_THROW(peak_metrics(blank(0.5), {}, 0.5), DomainError);
}
