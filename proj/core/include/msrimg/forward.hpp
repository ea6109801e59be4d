#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msrimg/directions.hpp"
#include "msrimg/geometry.hpp"
#include "msrimg/media.hpp"

namespace msrimg {

/// A thin inclusion: supporting curve (with thickness) and its material.
struct Inclusion {
  ParametricCurve curve;
  InclusionMaterial material;
};

enum class ForwardModel { AsymptoticFine, CoarseFactored, FoldyLax };

std::string to_string(ForwardModel model);
ForwardModel forward_model_from_string(const std::string& name);

/// C = h k_-^2 mu_+ (1 + i) / (4 mu_- sqrt(k_+ pi)).
cdouble msr_prefactor(double thickness, const FrequencyContext& ctx, const HalfSpaceMedium& medium);

/// Default data-generation spacing: lambda_- / 20.
inline double default_quad_spacing(const FrequencyContext& ctx) { return ctx.lambda_minus / 20.0; }

/// Response matrix from the asymptotic scattering amplitude, integrated along
/// each supporting curve with sample_curve(quad_spacing):
///
///   K_jl = C T_j T_l sum_m w_m [ (eps_T/eps_- - 1) + v_j . A(x_m) . v_l ] e^{i k_- (v_j + v_l) . x_m}
///
/// over the propagating incidences. K is symmetric by construction (the upper
/// triangle is computed and mirrored).
Eigen::MatrixXcd assemble_msr_fine(std::span<const Inclusion> inclusions, const HalfSpaceMedium& medium,
                                   const FrequencyContext& ctx, const DirectionSet& dirs,
                                   double quad_spacing);

Eigen::MatrixXcd assemble_msr_fine(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                   const FrequencyContext& ctx, const DirectionSet& dirs,
                                   double quad_spacing);

/// K = D E D^T for the coarse model, one representative point per lambda_-/2
/// segment.
///
/// Columns of D: first the permittivity columns D_eps^m (T_j e^{i k_- v_j.x_m}),
/// one per segment, then the permeability columns D_mu^{2(m-1)+s} with
/// xi_1 = tau(x_m), xi_2 = n(x_m) dotted into v_j. With several inclusions the
/// segments of all inclusions are concatenated in order. E is diagonal:
/// C |sigma|/M (eps_T/eps_- - 1) for the first M entries, then the 2x2 blocks
/// C |sigma|/M diag(2(mu_-/mu_T - 1), 2(1 - mu_T/mu_-)).
struct FactoredMSR {
  Eigen::MatrixXcd d;
  Eigen::VectorXcd e;  // diagonal of E
  std::size_t segments = 0;
  std::vector<CurveSample> nodes;  // representative points, concatenated

  Eigen::MatrixXcd product() const;
};

FactoredMSR assemble_msr_factored(std::span<const Inclusion> inclusions, const HalfSpaceMedium& medium,
                                  const FrequencyContext& ctx, const DirectionSet& dirs);

FactoredMSR assemble_msr_factored(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                  const FrequencyContext& ctx, const DirectionSet& dirs);

}  // namespace msrimg
