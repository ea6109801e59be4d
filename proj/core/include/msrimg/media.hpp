#pragma once

#include <complex>

#include "msrimg/geometry.hpp"

namespace msrimg {

using cdouble = std::complex<double>;

/// Two homogeneous half-spaces separated by x2 = 0. Relative permittivity and
/// permeability; the speed of light is absorbed into omega.
struct HalfSpaceMedium {
  double eps_plus = 1.0;
  double mu_plus = 1.0;
  double eps_minus = 1.0;
  double mu_minus = 1.0;

  bool valid() const noexcept;
};

/// Material of a thin inclusion.
struct InclusionMaterial {
  double eps_t = 1.0;
  double mu_t = 1.0;

  bool valid() const noexcept;
};

struct FrequencyContext {
  double omega = 0.0;
  double k_plus = 0.0;
  double k_minus = 0.0;
  double xi = 0.0;  // refraction ratio k_plus / k_minus
  double lambda_minus = 0.0;
};

/// Eigenvalues of the thin-layer polarization tensor A(x), with eigenvectors
/// tau(x) and n(x).
struct PolarizationTensor {
  double lambda_tau = 0.0;
  double lambda_n = 0.0;

  /// v . A . w for the frame (tau, n).
  cdouble quadratic_form(const Vec2& v, const Vec2& w, const Vec2& tau, const Vec2& n) const;
};

/// Tolerance that keeps sign(xhat_2) well defined and the refracted wave away
/// from the critical angle.
inline constexpr double kGrazingGuard = 1e-9;

FrequencyContext frequency_context(const HalfSpaceMedium& medium, double omega);

/// Refracted direction v(xhat) = (xi xhat_1, sign(xhat_2) sqrt(1 - xi^2 xhat_1^2)).
Vec2 transmitted_direction(const FrequencyContext& ctx, const Vec2& xhat);

/// Transmission factor
///   T(xhat) = 2 mu_- xi xhat_2 / (mu_- xi xhat_2 + mu_+ sign(xhat_2) sqrt(1 - xi^2 xhat_1^2)).
/// Real-valued for propagating directions; returned as complex.
cdouble transmission_coefficient(const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                                 const Vec2& xhat);

bool is_propagating(const FrequencyContext& ctx, const Vec2& xhat);

PolarizationTensor polarization_tensor(const HalfSpaceMedium& medium,
                                       const InclusionMaterial& inclusion);

}  // namespace msrimg
