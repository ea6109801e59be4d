#include "msrimg/forward.hpp"

#include <cmath>
#include <numbers>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

void require_propagating(const DirectionSet& dirs) {
  if (dirs.n_plus == 0)
    throw ConfigurationError("no propagating incidences: the refracted waves are all evanescent");
}

// Plane-wave factors T_j e^{i k v_j . x} for one point.
Eigen::VectorXcd plane_wave_column(const TransmittedWaves& waves, const Vec2& x) {
  Eigen::VectorXcd col(static_cast<Eigen::Index>(waves.size()));
  for (std::size_t j = 0; j < waves.size(); ++j) {
    const double phase = waves.k_minus * waves.v[j].dot(x);
    col[static_cast<Eigen::Index>(j)] = waves.transmission[static_cast<Eigen::Index>(j)] *
                                        cdouble(std::cos(phase), std::sin(phase));
  }
  return col;
}

}  // namespace

std::string to_string(ForwardModel model) {
  switch (model) {
    case ForwardModel::AsymptoticFine:
      return "fine";
    case ForwardModel::CoarseFactored:
      return "coarse";
    case ForwardModel::FoldyLax:
      return "foldylax";
  }
  return "unknown";
}

ForwardModel forward_model_from_string(const std::string& name) {
  if (name == "fine") return ForwardModel::AsymptoticFine;
  if (name == "coarse") return ForwardModel::CoarseFactored;
  if (name == "foldylax") return ForwardModel::FoldyLax;
  throw ParseError("unknown forward model '" + name + "' (expected fine, coarse or foldylax)");
}

cdouble msr_prefactor(double thickness, const FrequencyContext& ctx, const HalfSpaceMedium& medium) {
  const double scale = thickness * ctx.k_minus * ctx.k_minus * medium.mu_plus /
                       (4.0 * medium.mu_minus * std::sqrt(ctx.k_plus * std::numbers::pi));
  return cdouble(scale, scale);
}

Eigen::MatrixXcd assemble_msr_fine(std::span<const Inclusion> inclusions, const HalfSpaceMedium& medium,
                                   const FrequencyContext& ctx, const DirectionSet& dirs,
                                   double quad_spacing) {
  require_propagating(dirs);
  const TransmittedWaves waves = transmitted_waves(ctx, medium, dirs);
  const auto n = static_cast<Eigen::Index>(waves.size());
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);

  for (const Inclusion& inc : inclusions) {
    const cdouble c = msr_prefactor(inc.curve.thickness(), ctx, medium);
    const double eps_contrast = inc.material.eps_t / medium.eps_minus - 1.0;
    const PolarizationTensor tensor = polarization_tensor(medium, inc.material);
    const std::vector<CurveSample> nodes = sample_curve(inc.curve, quad_spacing);

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (const CurveSample& node : nodes) {
      const Eigen::VectorXcd wave = plane_wave_column(waves, node.point);
      for (Eigen::Index l = 0; l < n; ++l) {
        const Vec2& vl = waves.v[static_cast<std::size_t>(l)];
        for (Eigen::Index j = 0; j <= l; ++j) {
          const Vec2& vj = waves.v[static_cast<std::size_t>(j)];
          const cdouble bracket =
              eps_contrast + tensor.quadratic_form(vj, vl, node.tangent, node.normal);
          acc(j, l) += node.weight * bracket * wave[j] * wave[l];
        }
      }
    }
    k += c * acc;
  }
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < l; ++j) k(l, j) = k(j, l);
  return k;
}

Eigen::MatrixXcd assemble_msr_fine(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                   const FrequencyContext& ctx, const DirectionSet& dirs,
                                   double quad_spacing) {
  return assemble_msr_fine(std::span<const Inclusion>(&inclusion, 1), medium, ctx, dirs, quad_spacing);
}

Eigen::MatrixXcd FactoredMSR::product() const { return d * e.asDiagonal() * d.transpose(); }

FactoredMSR assemble_msr_factored(std::span<const Inclusion> inclusions, const HalfSpaceMedium& medium,
                                  const FrequencyContext& ctx, const DirectionSet& dirs) {
  require_propagating(dirs);
  const TransmittedWaves waves = transmitted_waves(ctx, medium, dirs);
  const auto n = static_cast<Eigen::Index>(waves.size());

  FactoredMSR out;
  std::vector<cdouble> eps_diag;
  std::vector<cdouble> mu_diag;
  for (const Inclusion& inc : inclusions) {
    const cdouble c = msr_prefactor(inc.curve.thickness(), ctx, medium);
    const double eps_contrast = inc.material.eps_t / medium.eps_minus - 1.0;
    const PolarizationTensor tensor = polarization_tensor(medium, inc.material);
    for (const CurveSample& node : split_into_segments(inc.curve, ctx.lambda_minus)) {
      out.nodes.push_back(node);
      const cdouble scale = c * node.weight;
      eps_diag.push_back(scale * eps_contrast);
      mu_diag.push_back(scale * tensor.lambda_tau);
      mu_diag.push_back(scale * tensor.lambda_n);
    }
  }
  const auto m = static_cast<Eigen::Index>(out.nodes.size());
  out.segments = out.nodes.size();
  out.d.resize(n, 3 * m);
  out.e.resize(3 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const CurveSample& node = out.nodes[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd wave = plane_wave_column(waves, node.point);
    out.d.col(i) = wave;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vec2& vj = waves.v[static_cast<std::size_t>(j)];
      out.d(j, m + 2 * i) = vj.dot(node.tangent) * wave[j];
      out.d(j, m + 2 * i + 1) = vj.dot(node.normal) * wave[j];
    }
    out.e[i] = eps_diag[static_cast<std::size_t>(i)];
    out.e[m + 2 * i] = mu_diag[static_cast<std::size_t>(2 * i)];
    out.e[m + 2 * i + 1] = mu_diag[static_cast<std::size_t>(2 * i + 1)];
  }
  return out;
}

FactoredMSR assemble_msr_factored(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                  const FrequencyContext& ctx, const DirectionSet& dirs) {
  return assemble_msr_factored(std::span<const Inclusion>(&inclusion, 1), medium, ctx, dirs);
}

}  // namespace msrimg
