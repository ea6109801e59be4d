#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "msrimg/media.hpp"

namespace msrimg {

/// Equi-angular probing directions.
///
/// zeta_j = alpha + (beta - alpha) (j - 1) / (N - 1). Incidences are
/// theta_j = -(cos zeta_j, sin zeta_j), pointing into the lower half-plane;
/// observations are y_j = -theta_j, pointing up. Only incidences whose refracted
/// wave propagates in the lower medium enter the response matrix.
struct DirectionSet {
  std::size_t count = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> zeta;
  std::vector<Vec2> incidences;
  std::vector<Vec2> observations;
  std::vector<bool> propagating;
  std::size_t n_plus = 0;

  /// Indices j with propagating[j], in increasing order.
  std::vector<std::size_t> propagating_indices() const;
  /// The propagating incidences theta_j, in increasing j.
  std::vector<Vec2> propagating_incidences() const;
};

DirectionSet build_directions(std::size_t count, double alpha, double beta,
                              const FrequencyContext& ctx);

/// Refracted directions v(theta_j) and transmission factors T(theta_j) for the
/// propagating incidences of a direction set at one frequency.
struct TransmittedWaves {
  double k_minus = 0.0;
  std::vector<Vec2> v;
  Eigen::VectorXcd transmission;

  std::size_t size() const noexcept { return v.size(); }
};

TransmittedWaves transmitted_waves(const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                                   const DirectionSet& dirs);

}  // namespace msrimg
