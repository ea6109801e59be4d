#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace msrimg {

using Vec2 = Eigen::Vector2d;

enum class CurveKind { Sigma1, Sigma2, Polyline, Points };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

/// Position and orthonormal frame at one parameter value.
struct CurveFrame {
  Vec2 point;
  Vec2 tangent;
  Vec2 normal;  // tangent rotated by +90 degrees
};

/// Quadrature node on a supporting curve. `weight` is the arclength element.
struct CurveSample {
  Vec2 point;
  Vec2 tangent;
  Vec2 normal;
  double weight = 0.0;
};

/// Supporting curve of a thin inclusion.
///
/// Sigma1: (z - 0.2, -0.5 z^2 - 1.5), Sigma2: (z + 0.2, z^3 + z^2 - 2.5), both
/// with a caller-chosen z interval. Polyline: vertices joined by straight
/// segments, parametrized by normalized arclength z in [0, 1]. Points: a set of
/// isolated point scatterers, z is the point index; each point carries its own
/// quadrature weight and a fixed frame (tangent (1,0)).
class ParametricCurve {
 public:
  static ParametricCurve sigma1(double z_min = -0.5, double z_max = 0.5, double thickness = 0.015,
                                std::string label = "sigma1");
  static ParametricCurve sigma2(double z_min = -0.5, double z_max = 0.5, double thickness = 0.015,
                                std::string label = "sigma2");
  static ParametricCurve polyline(std::vector<Vec2> vertices, double thickness = 0.015,
                                  std::string label = "polyline");
  static ParametricCurve points(std::vector<Vec2> points, std::vector<double> weights = {},
                                double thickness = 0.015, std::string label = "points");

  CurveKind kind() const noexcept { return kind_; }
  double z_min() const noexcept { return z_min_; }
  double z_max() const noexcept { return z_max_; }
  double thickness() const noexcept { return thickness_; }
  const std::string& label() const noexcept { return label_; }
  /// Polyline vertices or point-scatterer positions; empty for analytic kinds.
  const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
  /// Point-scatterer weights (Points kind only).
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Total length |sigma|. For Points this is the sum of the point weights.
  double arclength() const noexcept { return arclength_; }

  /// Arclength from z_min to z.
  double arclength_to(double z) const;
  /// Inverse of arclength_to for s in [0, arclength()].
  double parameter_at_arclength(double s) const;

  /// Largest x2 over the curve (dense check; exact at vertices).
  double max_depth_coordinate() const;

  /// Bounding box (min corner, max corner).
  std::pair<Vec2, Vec2> bounding_box() const;

 private:
  ParametricCurve() = default;
  void finalize();
  Vec2 derivative(double z) const;
  Vec2 position(double z) const;

  friend CurveFrame eval_curve(const ParametricCurve& curve, double z);

  CurveKind kind_ = CurveKind::Sigma1;
  double z_min_ = 0.0;
  double z_max_ = 1.0;
  double thickness_ = 0.015;
  std::string label_;
  std::vector<Vec2> vertices_;
  std::vector<double> weights_;
  // Cumulative arclength at panel boundaries (analytic kinds) or vertices
  // (polyline).
  std::vector<double> cumulative_;
  double arclength_ = 0.0;
};

/// Point and frame at parameter z. Throws DomainError outside [z_min, z_max].
CurveFrame eval_curve(const ParametricCurve& curve, double z);

/// Composite midpoint rule in arclength: ceil(L / spacing) equal cells, one node
/// at each cell's arclength midpoint, weight L / n. A spacing larger than the
/// curve gives a single midpoint node carrying the full length. Points kind
/// returns its points unchanged.
std::vector<CurveSample> sample_curve(const ParametricCurve& curve, double spacing);

/// Coarse model: M = max(1, ceil(L / (wavelength / 2))) equal-arclength
/// segments, represented by their arclength midpoints with weight L / M.
/// Points kind returns its points unchanged.
std::vector<CurveSample> split_into_segments(const ParametricCurve& curve, double wavelength);

/// Dense point set along a curve for distance queries. Connected traces are
/// treated as polylines, disconnected ones (Points kind) as isolated points.
struct Trace {
  std::vector<Vec2> nodes;
  bool connected = true;
};

/// Arclength spacing of the trace nodes is at most `spacing`.
Trace dense_trace(const ParametricCurve& curve, double spacing);

double distance_to_trace(const Vec2& x, const Trace& trace);
double distance_to_traces(const Vec2& x, const std::vector<Trace>& traces);

}  // namespace msrimg
