#include "msrimg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

std::vector<Trace> traces_for(const std::vector<ParametricCurve>& truths, double spacing) {
  std::vector<Trace> out;
  out.reserve(truths.size());
  for (const auto& c : truths) out.push_back(dense_trace(c, spacing));
  return out;
}

double trace_spacing(const Grid& grid) { return std::max(grid.step, 1e-6) / 4.0; }

}  // namespace

double background_mean(const ImageMap& map, const std::vector<ParametricCurve>& truths, double tube_width) {
  const auto traces = traces_for(truths, trace_spacing(map.grid));
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    if (distance_to_traces(map.grid.node(i), traces) > tube_width) {
      sum += map.values[i];
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : std::nan("");
}

PeakMetrics peak_metrics(const ImageMap& map, const std::vector<ParametricCurve>& truths, double level,
                         double tube_width) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("peak_metrics: level must lie in (0, 1)");
  if (truths.empty()) throw DomainError("peak_metrics: no truth curve");
  if (map.values.empty()) throw DomainError("peak_metrics: empty map");

  PeakMetrics m;
  m.level = level;
  m.tube_width = tube_width > 0.0 ? tube_width : map.lambda_minus;

  const auto traces = traces_for(truths, trace_spacing(map.grid));
  const auto peak = std::max_element(map.values.begin(), map.values.end());
  m.peak_value = *peak;
  m.peak_location = map.grid.node(static_cast<std::size_t>(peak - map.values.begin()));

  const double cut = level * m.peak_value;
  std::vector<Vec2> superlevel;
  double background = 0.0;
  std::size_t background_count = 0;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const Vec2 x = map.grid.node(i);
    const double d = distance_to_traces(x, traces);
    // a NaN value never enters S
    if (map.values[i] >= cut && m.peak_value > 0.0) {
      superlevel.push_back(x);
      m.false_alarm_distance = std::max(m.false_alarm_distance, d);
    }
    if (d > m.tube_width) {
      background += map.values[i];
      ++background_count;
    }
  }
  m.superlevel_count = superlevel.size();
  m.background_mean = background_count ? background / static_cast<double>(background_count) : std::nan("");

  if (superlevel.empty()) return m;
  double coverage = 0.0;
  for (const auto& t : traces) {
    for (const auto& p : t.nodes) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : superlevel) best = std::min(best, (s - p).squaredNorm());
      coverage = std::max(coverage, best);
    }
  }
  m.coverage_distance = std::sqrt(coverage);
  return m;
}

}  // namespace msrimg
