#pragma once

#include <limits>
#include <vector>

#include "msrimg/geometry.hpp"
#include "msrimg/imaging.hpp"

namespace msrimg {

/// Localization summary of an image against known supporting curves.
struct PeakMetrics {
  double level = 0.7;
  /// max over the superlevel set S of the distance to the curves.
  double false_alarm_distance = 0.0;
  /// max over dense curve samples of the distance to S; +inf when S is empty.
  double coverage_distance = std::numeric_limits<double>::infinity();
  double peak_value = 0.0;
  Vec2 peak_location = Vec2::Zero();
  /// Mean of W over grid nodes farther than tube_width from every curve
  /// (NaN when no node qualifies).
  double background_mean = 0.0;
  double tube_width = 0.0;
  std::size_t superlevel_count = 0;
};

/// S = {x : W(x) >= level max W}. tube_width <= 0 selects map.lambda_minus.
/// Throws DomainError for a level outside (0, 1) or no truth curve.
PeakMetrics peak_metrics(const ImageMap& map, const std::vector<ParametricCurve>& truths, double level = 0.7,
                         double tube_width = 0.0);

/// Mean of W outside the tube of the given width around the curves.
double background_mean(const ImageMap& map, const std::vector<ParametricCurve>& truths, double tube_width);

}  // namespace msrimg
