#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msrimg/dataset.hpp"
#include "msrimg/directions.hpp"
#include "msrimg/media.hpp"

namespace msrimg {

/// SVD K = U S V^H with the signal subspace selected by the ratio test
/// s_j / s_1 >= threshold.
struct TruncatedSVD {
  Eigen::VectorXd singular_values;  // nonincreasing
  Eigen::MatrixXcd left;            // columns u_m
  Eigen::MatrixXcd right;           // columns v_m
  std::size_t retained = 0;
  double threshold = 0.01;
};

inline constexpr double kDefaultSvdThreshold = 0.01;

/// Throws DomainError for a non-square K or a threshold outside (0, 1). A zero
/// matrix yields retained = 0.
TruncatedSVD truncate_svd(const Eigen::MatrixXcd& k, double threshold = kDefaultSvdThreshold);

/// Weights c = (a, b1, b2) of the steering vector, not all zero.
struct SteeringConfig {
  double a = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;

  bool valid() const noexcept { return a != 0.0 || b1 != 0.0 || b2 != 0.0; }
  bool operator==(const SteeringConfig&) const = default;
};

enum class ContrastKind { None, Permittivity, PermeabilityLess, PermeabilityGreater, Both };

std::string to_string(ContrastKind kind);
ContrastKind contrast_kind_from_string(const std::string& name);

/// Classify the contrast of an inclusion against the lower medium. For `Both`
/// use mu_t > mu_minus to pick the steering.
ContrastKind classify_contrast(const HalfSpaceMedium& medium, const InclusionMaterial& material);

/// Permittivity -> (1,0,0); mu_T < mu_- -> (0,1,0); mu_T > mu_- -> (0,0,1);
/// both contrasts -> (1,0,1) when mu_T > mu_-, (1,1,0) otherwise. `None`
/// falls back to (1,0,0).
SteeringConfig default_steering(ContrastKind contrast, bool mu_greater = true);

/// d(x) / ||d(x)|| with d_j = (a + b1 v_j1 + b2 v_j2) T_j e^{i k_- v_j . x}.
/// Throws DegenerateSteeringError when ||d|| < 1e-12 N_plus.
Eigen::VectorXcd steering_vector(const Vec2& x, const TransmittedWaves& waves, const SteeringConfig& cfg);

struct Rect {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -3.0;
  double y_max = -1.0;

  bool operator==(const Rect&) const = default;
};

/// Regular grid over a rectangle, corners included. Node (i, r) sits at
/// x1 = x_min + i (x_max - x_min)/(nx - 1), x2 = y_min + r (y_max - y_min)/(ny - 1);
/// storage is row-major with r (the x2 index) as the row.
struct Grid {
  Rect domain;
  double step = 0.02;
  std::size_t nx = 0;
  std::size_t ny = 0;

  std::size_t size() const noexcept { return nx * ny; }
  double x(std::size_t i) const;
  double y(std::size_t r) const;
  Vec2 node(std::size_t flat) const { return Vec2(x(flat % nx), y(flat / nx)); }
};

Grid make_grid(const Rect& domain, double step);
std::vector<Vec2> grid_points(const Grid& grid);

struct ImageMap {
  Grid grid;
  std::vector<double> values;  // row-major, size nx * ny
  /// Shortest lower-medium wavelength among the frequencies used.
  double lambda_minus = 0.0;
  std::vector<std::size_t> retained;  // M_f per frequency
  /// Set when some frequency had an empty signal subspace.
  bool no_signal = false;

  double max_value() const;
};

/// W_S(x) = sum_{m <= M} |<d(x), u_m>| |<d(x), conj(v_m)>| with <a, b> = conj(a) . b.
ImageMap image_single(const TruncatedSVD& svd, const TransmittedWaves& waves, const SteeringConfig& cfg,
                      const Grid& grid);

ImageMap image_single(const Eigen::MatrixXcd& k, const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                      const DirectionSet& dirs, const SteeringConfig& cfg, const Grid& grid,
                      double threshold = kDefaultSvdThreshold);

/// Single-frequency maps W_S(omega_f) for every matrix of a dataset, in
/// dataset order. Failures are rethrown with the frequency index attached.
std::vector<ImageMap> image_frequencies(const MSRDataset& dataset, const SteeringConfig& cfg,
                                        const Grid& grid, double threshold = kDefaultSvdThreshold);

/// W_F(x) = (1/F) sum_f W_S(x; omega_f).
ImageMap average_maps(std::span<const ImageMap> maps);

ImageMap image_multi(const MSRDataset& dataset, const SteeringConfig& cfg, const Grid& grid,
                     double threshold = kDefaultSvdThreshold);

}  // namespace msrimg
