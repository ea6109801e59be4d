#include "msrimg/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "msrimg/errors.hpp"

namespace msrimg {

TruncatedSVD truncate_svd(const Eigen::MatrixXcd& k, double threshold) {
  if (k.rows() != k.cols()) throw DomainError("truncate_svd: matrix must be square");
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("truncate_svd: threshold must lie in (0, 1)");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  TruncatedSVD out;
  out.singular_values = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  out.threshold = threshold;
  const Eigen::Index n = out.singular_values.size();
  if (n == 0 || !(out.singular_values[0] > 0.0)) return out;
  const double s1 = out.singular_values[0];
  std::size_t m = 0;
  while (static_cast<Eigen::Index>(m) < n && out.singular_values[static_cast<Eigen::Index>(m)] / s1 >= threshold) ++m;
  out.retained = m;
  return out;
}

std::string to_string(ContrastKind kind) {
  switch (kind) {
    case ContrastKind::None:
      return "none";
    case ContrastKind::Permittivity:
      return "permittivity";
    case ContrastKind::PermeabilityLess:
      return "permeability-less";
    case ContrastKind::PermeabilityGreater:
      return "permeability-greater";
    case ContrastKind::Both:
      return "both";
  }
  return "none";
}

ContrastKind contrast_kind_from_string(const std::string& name) {
  if (name == "none") return ContrastKind::None;
  if (name == "permittivity") return ContrastKind::Permittivity;
  if (name == "permeability-less") return ContrastKind::PermeabilityLess;
  if (name == "permeability-greater") return ContrastKind::PermeabilityGreater;
  if (name == "both") return ContrastKind::Both;
  throw ParseError("unknown contrast kind '" + name + "'");
}

ContrastKind classify_contrast(const HalfSpaceMedium& medium, const InclusionMaterial& material) {
  const bool eps = material.eps_t != medium.eps_minus;
  const bool mu = material.mu_t != medium.mu_minus;
  if (eps && mu) return ContrastKind::Both;
  if (eps) return ContrastKind::Permittivity;
  if (mu) return material.mu_t < medium.mu_minus ? ContrastKind::PermeabilityLess
                                                 : ContrastKind::PermeabilityGreater;
  return ContrastKind::None;
}

SteeringConfig default_steering(ContrastKind contrast, bool mu_greater) {
  switch (contrast) {
    case ContrastKind::None:
    case ContrastKind::Permittivity:
      return {1.0, 0.0, 0.0};
    case ContrastKind::PermeabilityLess:
      return {0.0, 1.0, 0.0};
    case ContrastKind::PermeabilityGreater:
      return {0.0, 0.0, 1.0};
    case ContrastKind::Both:
      return mu_greater ? SteeringConfig{1.0, 0.0, 1.0} : SteeringConfig{1.0, 1.0, 0.0};
  }
  return {1.0, 0.0, 0.0};
}

namespace {

// Direction weights (a + b.v_j) T_j, normalized so that every steering vector
// has unit norm (|e^{i k v.x}| = 1 makes the norm independent of x).
Eigen::VectorXcd steering_weights(const TransmittedWaves& waves, const SteeringConfig& cfg) {
  if (!cfg.valid()) throw DegenerateSteeringError("steering vector c must not be zero");
  const auto n = static_cast<Eigen::Index>(waves.size());
  Eigen::VectorXcd w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec2& v = waves.v[static_cast<std::size_t>(j)];
    w[j] = (cfg.a + cfg.b1 * v.x() + cfg.b2 * v.y()) * waves.transmission[j];
  }
  const double norm = w.norm();
  if (!(norm >= 1e-12 * static_cast<double>(n)))
    throw DegenerateSteeringError("steering vector vanishes for every direction (norm " +
                                  std::to_string(norm) + ")");
  return w / norm;
}

}  // namespace

Eigen::VectorXcd steering_vector(const Vec2& x, const TransmittedWaves& waves, const SteeringConfig& cfg) {
  Eigen::VectorXcd d = steering_weights(waves, cfg);
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    const double phase = waves.k_minus * waves.v[static_cast<std::size_t>(j)].dot(x);
    d[j] *= cdouble(std::cos(phase), std::sin(phase));
  }
  return d;
}

double Grid::x(std::size_t i) const {
  if (nx == 1) return domain.x_min;
  return domain.x_min + (domain.x_max - domain.x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double Grid::y(std::size_t r) const {
  if (ny == 1) return domain.y_min;
  return domain.y_min + (domain.y_max - domain.y_min) * static_cast<double>(r) / static_cast<double>(ny - 1);
}

Grid make_grid(const Rect& domain, double step) {
  if (!(step > 0.0)) throw DomainError("make_grid: step must be positive");
  if (!(domain.x_max >= domain.x_min && domain.y_max >= domain.y_min))
    throw DomainError("make_grid: empty domain");
  Grid g;
  g.domain = domain;
  g.step = step;
  // Round to the nearest whole number of steps; corners are always nodes.
  auto count = [step](double width) {
    return static_cast<std::size_t>(std::max(0.0, std::round(width / step))) + 1;
  };
  g.nx = count(domain.x_max - domain.x_min);
  g.ny = count(domain.y_max - domain.y_min);
  if (domain.x_max > domain.x_min) g.nx = std::max<std::size_t>(g.nx, 2);
  if (domain.y_max > domain.y_min) g.ny = std::max<std::size_t>(g.ny, 2);
  return g;
}

std::vector<Vec2> grid_points(const Grid& grid) {
  std::vector<Vec2> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out.push_back(grid.node(k));
  return out;
}

double ImageMap::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

ImageMap image_single(const TruncatedSVD& svd, const TransmittedWaves& waves, const SteeringConfig& cfg,
                      const Grid& grid) {
  ImageMap map;
  map.grid = grid;
  map.values.assign(grid.size(), 0.0);
  map.lambda_minus = 2.0 * std::numbers::pi / waves.k_minus;
  map.retained = {svd.retained};
  if (svd.retained == 0) {
    map.no_signal = true;
    return map;
  }
  const auto n = static_cast<Eigen::Index>(waves.size());
  const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(svd.retained, waves.size()));
  const auto nx = static_cast<Eigen::Index>(grid.nx);
  const Eigen::VectorXcd weights = steering_weights(waves, cfg);

  // |<d, u_m>| = |u_m^H d| and |<d, conj(v_m)>| = |v_m^T d|.
  const Eigen::MatrixXcd uh = svd.left.leftCols(m).adjoint();
  const Eigen::MatrixXcd vt = svd.right.leftCols(m).transpose();

  // e^{i k v.x} factorizes over the grid axes.
  Eigen::MatrixXcd row_phase(n, nx);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double kv1 = waves.k_minus * waves.v[static_cast<std::size_t>(j)].x();
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double phase = kv1 * grid.x(static_cast<std::size_t>(i));
      row_phase(j, i) = weights[j] * cdouble(std::cos(phase), std::sin(phase));
    }
  }
  Eigen::MatrixXcd d(n, nx);
  for (std::size_t r = 0; r < grid.ny; ++r) {
    const double x2 = grid.y(r);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double phase = waves.k_minus * waves.v[static_cast<std::size_t>(j)].y() * x2;
      d.row(j) = row_phase.row(j) * cdouble(std::cos(phase), std::sin(phase));
    }
    const Eigen::MatrixXd a = (uh * d).cwiseAbs();
    const Eigen::MatrixXd b = (vt * d).cwiseAbs();
    for (Eigen::Index i = 0; i < nx; ++i) {
      double w = 0.0;
      for (Eigen::Index mm = 0; mm < m; ++mm) w += a(mm, i) * b(mm, i);
      map.values[r * grid.nx + static_cast<std::size_t>(i)] = w;
    }
  }
  return map;
}

ImageMap image_single(const Eigen::MatrixXcd& k, const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                      const DirectionSet& dirs, const SteeringConfig& cfg, const Grid& grid,
                      double threshold) {
  const TransmittedWaves waves = transmitted_waves(ctx, medium, dirs);
  if (static_cast<std::size_t>(k.rows()) != waves.size())
    throw DomainError("image_single: matrix size does not match the propagating direction count");
  return image_single(truncate_svd(k, threshold), waves, cfg, grid);
}

std::vector<ImageMap> image_frequencies(const MSRDataset& dataset, const SteeringConfig& cfg,
                                        const Grid& grid, double threshold) {
  if (dataset.matrices.empty()) throw ConfigurationError("dataset holds no frequencies");
  std::vector<ImageMap> maps;
  maps.reserve(dataset.matrices.size());
  for (std::size_t f = 0; f < dataset.matrices.size(); ++f) {
    try {
      const FrequencyContext ctx = frequency_context(dataset.medium, dataset.frequencies[f]);
      maps.push_back(image_single(dataset.matrices[f], ctx, dataset.medium, dataset.directions, cfg, grid,
                                  threshold));
    } catch (const DegenerateSteeringError& e) {
      throw DegenerateSteeringError("frequency " + std::to_string(f) + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("frequency " + std::to_string(f) + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("frequency " + std::to_string(f) + ": " + e.what());
    }
  }
  return maps;
}

ImageMap average_maps(std::span<const ImageMap> maps) {
  if (maps.empty()) throw ConfigurationError("average_maps: no maps");
  ImageMap out;
  out.grid = maps.front().grid;
  out.values = maps.front().values;
  out.lambda_minus = maps.front().lambda_minus;
  out.retained = maps.front().retained;
  out.no_signal = maps.front().no_signal;
  for (std::size_t f = 1; f < maps.size(); ++f) {
    const ImageMap& m = maps[f];
    if (m.values.size() != out.values.size()) throw DomainError("average_maps: grid mismatch");
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += m.values[k];
    out.lambda_minus = std::min(out.lambda_minus, m.lambda_minus);
    out.retained.insert(out.retained.end(), m.retained.begin(), m.retained.end());
    out.no_signal = out.no_signal || m.no_signal;
  }
  if (maps.size() > 1) {
    const double inv = 1.0 / static_cast<double>(maps.size());
    for (double& v : out.values) v *= inv;
  }
  return out;
}

ImageMap image_multi(const MSRDataset& dataset, const SteeringConfig& cfg, const Grid& grid, double threshold) {
  const std::vector<ImageMap> maps = image_frequencies(dataset, cfg, grid, threshold);
  return average_maps(maps);
}

}  // namespace msrimg
