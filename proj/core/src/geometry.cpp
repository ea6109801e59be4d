#include "msrimg/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

constexpr int kPanels = 128;

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

Vec2 rotate_plus_90(const Vec2& t) { return Vec2(-t.y(), t.x()); }

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Sigma1:
      return "sigma1";
    case CurveKind::Sigma2:
      return "sigma2";
    case CurveKind::Polyline:
      return "polyline";
    case CurveKind::Points:
      return "points";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "sigma1") return CurveKind::Sigma1;
  if (name == "sigma2") return CurveKind::Sigma2;
  if (name == "polyline") return CurveKind::Polyline;
  if (name == "points") return CurveKind::Points;
  throw ParseError("unknown curve kind '" + name + "'");
}

ParametricCurve ParametricCurve::sigma1(double z_min, double z_max, double thickness,
                                        std::string label) {
  ParametricCurve c;
  c.kind_ = CurveKind::Sigma1;
  c.z_min_ = z_min;
  c.z_max_ = z_max;
  c.thickness_ = thickness;
  c.label_ = std::move(label);
  c.finalize();
  return c;
}

ParametricCurve ParametricCurve::sigma2(double z_min, double z_max, double thickness,
                                        std::string label) {
  ParametricCurve c = sigma1(z_min, z_max, thickness, std::move(label));
  c.kind_ = CurveKind::Sigma2;
  c.finalize();
  return c;
}

ParametricCurve ParametricCurve::polyline(std::vector<Vec2> vertices, double thickness,
                                          std::string label) {
  if (vertices.size() < 2) throw DomainError("polyline needs at least two vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if ((vertices[i] - vertices[i - 1]).norm() == 0.0)
      throw DomainError("polyline has a zero-length segment (tangent undefined)");
  }
  ParametricCurve c;
  c.kind_ = CurveKind::Polyline;
  c.z_min_ = 0.0;
  c.z_max_ = 1.0;
  c.thickness_ = thickness;
  c.label_ = std::move(label);
  c.vertices_ = std::move(vertices);
  c.finalize();
  return c;
}

ParametricCurve ParametricCurve::points(std::vector<Vec2> points, std::vector<double> weights,
                                        double thickness, std::string label) {
  if (points.empty()) throw DomainError("point set is empty");
  if (weights.empty()) weights.assign(points.size(), 1.0);
  if (weights.size() != points.size())
    throw DomainError("point set: weights and points differ in length");
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("point set: weights must be positive");
  }
  ParametricCurve c;
  c.kind_ = CurveKind::Points;
  c.z_min_ = 0.0;
  c.z_max_ = static_cast<double>(points.size() - 1);
  c.thickness_ = thickness;
  c.label_ = std::move(label);
  c.vertices_ = std::move(points);
  c.weights_ = std::move(weights);
  c.finalize();
  return c;
}

Vec2 ParametricCurve::position(double z) const {
  switch (kind_) {
    case CurveKind::Sigma1:
      return Vec2(z - 0.2, -0.5 * z * z - 1.5);
    case CurveKind::Sigma2:
      return Vec2(z + 0.2, z * z * z + z * z - 2.5);
    case CurveKind::Polyline: {
      const double s = z * arclength_;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
      std::size_t seg = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::distance(cumulative_.begin(), it)), 1, vertices_.size() - 1);
      const double len = cumulative_[seg] - cumulative_[seg - 1];
      const double t = (s - cumulative_[seg - 1]) / len;
      return vertices_[seg - 1] + t * (vertices_[seg] - vertices_[seg - 1]);
    }
    case CurveKind::Points:
      return vertices_[static_cast<std::size_t>(std::lround(z))];
  }
  return Vec2::Zero();
}

Vec2 ParametricCurve::derivative(double z) const {
  switch (kind_) {
    case CurveKind::Sigma1:
      return Vec2(1.0, -z);
    case CurveKind::Sigma2:
      return Vec2(1.0, 3.0 * z * z + 2.0 * z);
    case CurveKind::Polyline: {
      const double s = z * arclength_;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
      std::size_t seg = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::distance(cumulative_.begin(), it)), 1, vertices_.size() - 1);
      return (vertices_[seg] - vertices_[seg - 1]) * (arclength_ / (cumulative_[seg] - cumulative_[seg - 1]));
    }
    case CurveKind::Points:
      return Vec2(1.0, 0.0);
  }
  return Vec2::Zero();
}

void ParametricCurve::finalize() {
  if (!(z_max_ >= z_min_)) throw DomainError("curve parameter range is empty");
  cumulative_.clear();
  switch (kind_) {
    case CurveKind::Sigma1:
    case CurveKind::Sigma2: {
      if (!(z_max_ > z_min_)) throw DomainError("curve parameter range is degenerate");
      cumulative_.resize(kPanels + 1, 0.0);
      const double width = (z_max_ - z_min_) / kPanels;
      for (int p = 0; p < kPanels; ++p) {
        const double a = z_min_ + p * width;
        double sum = 0.0;
        for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
          sum += kGaussWeights[g] * derivative(a + 0.5 * width * (kGaussNodes[g] + 1.0)).norm();
        }
        cumulative_[p + 1] = cumulative_[p] + 0.5 * width * sum;
      }
      arclength_ = cumulative_.back();
      break;
    }
    case CurveKind::Polyline:
      cumulative_.resize(vertices_.size(), 0.0);
      for (std::size_t i = 1; i < vertices_.size(); ++i)
        cumulative_[i] = cumulative_[i - 1] + (vertices_[i] - vertices_[i - 1]).norm();
      arclength_ = cumulative_.back();
      break;
    case CurveKind::Points:
      arclength_ = 0.0;
      for (double w : weights_) arclength_ += w;
      break;
  }
}

double ParametricCurve::arclength_to(double z) const {
  if (z < z_min_ || z > z_max_) throw DomainError("arclength_to: z outside parameter range");
  switch (kind_) {
    case CurveKind::Sigma1:
    case CurveKind::Sigma2: {
      const double width = (z_max_ - z_min_) / kPanels;
      const int p = std::min(kPanels - 1, static_cast<int>((z - z_min_) / width));
      const double a = z_min_ + p * width;
      const double span = z - a;
      double sum = 0.0;
      for (std::size_t g = 0; g < kGaussNodes.size(); ++g)
        sum += kGaussWeights[g] * derivative(a + 0.5 * span * (kGaussNodes[g] + 1.0)).norm();
      return cumulative_[p] + 0.5 * span * sum;
    }
    case CurveKind::Polyline:
      return z * arclength_;
    case CurveKind::Points: {
      const auto idx = static_cast<std::size_t>(std::lround(z));
      double s = 0.0;
      for (std::size_t i = 0; i < idx; ++i) s += weights_[i];
      return s;
    }
  }
  return 0.0;
}

double ParametricCurve::parameter_at_arclength(double s) const {
  if (s <= 0.0) return z_min_;
  if (s >= arclength_) return z_max_;
  switch (kind_) {
    case CurveKind::Polyline:
      return s / arclength_;
    case CurveKind::Points: {
      double acc = 0.0;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        if (s < acc) return static_cast<double>(i);
      }
      return z_max_;
    }
    case CurveKind::Sigma1:
    case CurveKind::Sigma2:
      break;
  }
  const double width = (z_max_ - z_min_) / kPanels;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const int p = std::clamp(static_cast<int>(std::distance(cumulative_.begin(), it)) - 1, 0, kPanels - 1);
  double lo = z_min_ + p * width;
  double hi = lo + width;
  double z = lo + width * (s - cumulative_[p]) / (cumulative_[p + 1] - cumulative_[p]);
  // Safeguarded Newton on s(z) - s = 0; ds/dz = |r'(z)| > 0.
  for (int iter = 0; iter < 60; ++iter) {
    const double f = arclength_to(z) - s;
    if (std::abs(f) <= 1e-15 * std::max(1.0, arclength_)) break;
    if (f > 0.0) hi = z; else lo = z;
    double next = z - f / derivative(z).norm();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    z = next;
  }
  return z;
}

double ParametricCurve::max_depth_coordinate() const {
  double top = -std::numeric_limits<double>::infinity();
  if (kind_ == CurveKind::Polyline || kind_ == CurveKind::Points) {
    for (const auto& v : vertices_) top = std::max(top, v.y());
    return top;
  }
  constexpr int kChecks = 2048;
  for (int i = 0; i <= kChecks; ++i) {
    const double z = z_min_ + (z_max_ - z_min_) * i / kChecks;
    top = std::max(top, position(z).y());
  }
  return top;
}

std::pair<Vec2, Vec2> ParametricCurve::bounding_box() const {
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  const Trace trace = dense_trace(*this, std::max(arclength_ / 2048.0, 1e-6));
  for (const auto& p : trace.nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

CurveFrame eval_curve(const ParametricCurve& curve, double z) {
  if (!(z >= curve.z_min_ && z <= curve.z_max_))
    throw DomainError("eval_curve: z = " + std::to_string(z) + " outside parameter range [" +
                      std::to_string(curve.z_min_) + ", " + std::to_string(curve.z_max_) + "]");
  CurveFrame frame;
  frame.point = curve.position(z);
  frame.tangent = curve.derivative(z).normalized();
  frame.normal = rotate_plus_90(frame.tangent);
  return frame;
}

namespace {

std::vector<CurveSample> point_samples(const ParametricCurve& curve) {
  std::vector<CurveSample> out;
  out.reserve(curve.vertices().size());
  for (std::size_t i = 0; i < curve.vertices().size(); ++i)
    out.push_back({curve.vertices()[i], Vec2(1.0, 0.0), Vec2(0.0, 1.0), curve.weights()[i]});
  return out;
}

std::vector<CurveSample> midpoint_cells(const ParametricCurve& curve, std::size_t cells) {
  const double length = curve.arclength();
  const double weight = length / static_cast<double>(cells);
  std::vector<CurveSample> out;
  out.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * weight;
    const CurveFrame f = eval_curve(curve, curve.parameter_at_arclength(s));
    out.push_back({f.point, f.tangent, f.normal, weight});
  }
  return out;
}

}  // namespace

std::vector<CurveSample> sample_curve(const ParametricCurve& curve, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("sample_curve: spacing must be positive");
  if (curve.kind() == CurveKind::Points) return point_samples(curve);
  const auto cells = static_cast<std::size_t>(
      std::max(1.0, std::ceil(curve.arclength() / spacing - 1e-12)));
  return midpoint_cells(curve, cells);
}

std::vector<CurveSample> split_into_segments(const ParametricCurve& curve, double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("split_into_segments: wavelength must be positive");
  if (curve.kind() == CurveKind::Points) return point_samples(curve);
  const auto segments = static_cast<std::size_t>(
      std::max(1.0, std::ceil(curve.arclength() / (0.5 * wavelength) - 1e-12)));
  return midpoint_cells(curve, segments);
}

Trace dense_trace(const ParametricCurve& curve, double spacing) {
  Trace trace;
  if (curve.kind() == CurveKind::Points) {
    trace.nodes = curve.vertices();
    trace.connected = false;
    return trace;
  }
  if (curve.kind() == CurveKind::Polyline) {
    // Keep the corners exactly.
    for (std::size_t i = 0; i + 1 < curve.vertices().size(); ++i) {
      const Vec2& a = curve.vertices()[i];
      const Vec2& b = curve.vertices()[i + 1];
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a).norm() / spacing)));
      for (std::size_t k = 0; k < n; ++k) trace.nodes.push_back(a + (b - a) * (double(k) / double(n)));
    }
    trace.nodes.push_back(curve.vertices().back());
    return trace;
  }
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(curve.arclength() / spacing)));
  trace.nodes.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = curve.arclength() * double(k) / double(n);
    trace.nodes.push_back(eval_curve(curve, curve.parameter_at_arclength(s)).point);
  }
  return trace;
}

double distance_to_trace(const Vec2& x, const Trace& trace) {
  double best = std::numeric_limits<double>::infinity();
  if (!trace.connected || trace.nodes.size() == 1) {
    for (const auto& p : trace.nodes) best = std::min(best, (x - p).norm());
    return best;
  }
  for (std::size_t i = 0; i + 1 < trace.nodes.size(); ++i) {
    const Vec2 a = trace.nodes[i];
    const Vec2 ab = trace.nodes[i + 1] - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (x - (a + t * ab)).norm());
  }
  return best;
}

double distance_to_traces(const Vec2& x, const std::vector<Trace>& traces) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : traces) best = std::min(best, distance_to_trace(x, t));
  return best;
}

}  // namespace msrimg
