#include "msrimg/directions.hpp"

#include <cmath>
#include <numbers>

#include "msrimg/errors.hpp"

namespace msrimg {

std::vector<std::size_t> DirectionSet::propagating_indices() const {
  std::vector<std::size_t> out;
  out.reserve(n_plus);
  for (std::size_t j = 0; j < count; ++j)
    if (propagating[j]) out.push_back(j);
  return out;
}

std::vector<Vec2> DirectionSet::propagating_incidences() const {
  std::vector<Vec2> out;
  out.reserve(n_plus);
  for (std::size_t j = 0; j < count; ++j)
    if (propagating[j]) out.push_back(incidences[j]);
  return out;
}

DirectionSet build_directions(std::size_t count, double alpha, double beta,
                              const FrequencyContext& ctx) {
  if (count < 2) throw DomainError("build_directions: need at least two directions");
  if (!(alpha > 0.0 && alpha < beta && beta < std::numbers::pi))
    throw DomainError("build_directions: require 0 < alpha < beta < pi");
  DirectionSet dirs;
  dirs.count = count;
  dirs.alpha = alpha;
  dirs.beta = beta;
  dirs.zeta.resize(count);
  dirs.incidences.resize(count);
  dirs.observations.resize(count);
  dirs.propagating.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double zeta = alpha + (beta - alpha) * static_cast<double>(j) / static_cast<double>(count - 1);
    dirs.zeta[j] = zeta;
    dirs.incidences[j] = Vec2(-std::cos(zeta), -std::sin(zeta));
    dirs.observations[j] = -dirs.incidences[j];
    dirs.propagating[j] = is_propagating(ctx, dirs.incidences[j]);
    if (dirs.propagating[j]) ++dirs.n_plus;
  }
  return dirs;
}

TransmittedWaves transmitted_waves(const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                                   const DirectionSet& dirs) {
  TransmittedWaves waves;
  waves.k_minus = ctx.k_minus;
  waves.v.reserve(dirs.n_plus);
  waves.transmission.resize(static_cast<Eigen::Index>(dirs.n_plus));
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < dirs.count; ++j) {
    if (!dirs.propagating[j]) continue;
    const Vec2& theta = dirs.incidences[j];
    waves.v.push_back(transmitted_direction(ctx, theta));
    waves.transmission[row++] = transmission_coefficient(ctx, medium, theta);
  }
  return waves;
}

}  // namespace msrimg
