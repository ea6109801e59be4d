#pragma once

#include <span>

#include <Eigen/Core>

#include "msrimg/forward.hpp"

namespace msrimg {

struct FoldyLaxOptions {
  /// When false the pair propagator is zero and the result reduces to
  /// assemble_msr_fine on the same nodes.
  bool coupling = true;
  /// Reciprocal condition estimate below which the system counts as resonant.
  double min_rcond = 1e-12;
};

/// Multiple-scattering response matrix.
///
/// Each fine quadrature node carries up to three scattering channels: a
/// monopole for the permittivity contrast and two dipoles along tau(x_m) and
/// n(x_m) for the permeability contrast. Channel s of node m is excited by
/// a_{ms}(theta) = {1, v.tau, v.n} T(theta) e^{i k_- v.x_m} and has strength
/// k_-^2 h w_m c_s with c = (eps_T/eps_- - 1, lambda_tau, lambda_n). Exciting
/// fields solve (I - G S) f = a per incidence, where G couples channels of
/// distinct nodes through the lower-medium kernel (i/4) H0^(1)(k_- |x - x'|)
/// and its derivatives. The response is K_jl = C sum_{ms} w_m c_s a_{ms}(theta_j) f_{ms}(theta_l).
///
/// Throws ResonanceError when (I - G S) is numerically singular.
Eigen::MatrixXcd assemble_msr_foldylax(std::span<const Inclusion> inclusions,
                                       const HalfSpaceMedium& medium, const FrequencyContext& ctx,
                                       const DirectionSet& dirs, double quad_spacing,
                                       const FoldyLaxOptions& options = {});

Eigen::MatrixXcd assemble_msr_foldylax(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                       const FrequencyContext& ctx, const DirectionSet& dirs,
                                       double quad_spacing, const FoldyLaxOptions& options = {});

/// Channel-to-channel coupling of the lower-medium kernel between a receiving
/// node at x (frame xi_x) and a source node at y (frame xi_y). Channel 0 is the
/// monopole, channels 1 and 2 the dipoles along the first and second frame
/// vectors. Exposed for testing.
cdouble channel_coupling(int receive_channel, int source_channel, const Vec2& x, const Vec2& y,
                         const Vec2 receive_frame[2], const Vec2 source_frame[2], double k);

}  // namespace msrimg
