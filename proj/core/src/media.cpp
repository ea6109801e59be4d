#include "msrimg/media.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

double sign_of(double x) { return x > 0.0 ? 1.0 : -1.0; }

void check_direction(const FrequencyContext& ctx, const Vec2& xhat) {
  if (std::abs(xhat.y()) <= kGrazingGuard) {
    std::ostringstream os;
    os << "grazing direction (" << xhat.x() << ", " << xhat.y() << ")";
    throw GrazingDirectionError(os.str());
  }
  if (std::abs(ctx.xi * xhat.x()) >= 1.0 - kGrazingGuard) {
    std::ostringstream os;
    os << "evanescent refracted wave: |xi * xhat_1| = " << std::abs(ctx.xi * xhat.x()) << " >= 1";
    throw EvanescentDirectionError(os.str());
  }
}

}  // namespace

bool HalfSpaceMedium::valid() const noexcept {
  return positive_finite(eps_plus) && positive_finite(mu_plus) && positive_finite(eps_minus) &&
         positive_finite(mu_minus);
}

bool InclusionMaterial::valid() const noexcept { return positive_finite(eps_t) && positive_finite(mu_t); }

cdouble PolarizationTensor::quadratic_form(const Vec2& v, const Vec2& w, const Vec2& tau,
                                           const Vec2& n) const {
  return lambda_tau * v.dot(tau) * w.dot(tau) + lambda_n * v.dot(n) * w.dot(n);
}

FrequencyContext frequency_context(const HalfSpaceMedium& medium, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("frequency_context: omega must be positive and finite");
  if (!medium.valid()) throw DomainError("frequency_context: medium parameters must be positive");
  FrequencyContext ctx;
  ctx.omega = omega;
  ctx.k_plus = omega * std::sqrt(medium.eps_plus * medium.mu_plus);
  ctx.k_minus = omega * std::sqrt(medium.eps_minus * medium.mu_minus);
  ctx.xi = ctx.k_plus / ctx.k_minus;
  ctx.lambda_minus = 2.0 * std::numbers::pi / ctx.k_minus;
  return ctx;
}

Vec2 transmitted_direction(const FrequencyContext& ctx, const Vec2& xhat) {
  check_direction(ctx, xhat);
  const double t1 = ctx.xi * xhat.x();
  return Vec2(t1, sign_of(xhat.y()) * std::sqrt(1.0 - t1 * t1));
}

cdouble transmission_coefficient(const FrequencyContext& ctx, const HalfSpaceMedium& medium,
                                 const Vec2& xhat) {
  check_direction(ctx, xhat);
  const double t1 = ctx.xi * xhat.x();
  const double root = std::sqrt(1.0 - t1 * t1);
  const double numerator = 2.0 * medium.mu_minus * ctx.xi * xhat.y();
  const double denominator =
      medium.mu_minus * ctx.xi * xhat.y() + medium.mu_plus * sign_of(xhat.y()) * root;
  if (denominator == 0.0) throw SingularTransmissionError("transmission coefficient: zero denominator");
  return {numerator / denominator, 0.0};
}

bool is_propagating(const FrequencyContext& ctx, const Vec2& xhat) {
  return std::abs(ctx.xi * xhat.x()) < 1.0 - kGrazingGuard && std::abs(xhat.y()) > kGrazingGuard;
}

PolarizationTensor polarization_tensor(const HalfSpaceMedium& medium,
                                       const InclusionMaterial& inclusion) {
  const double mu_m = medium.mu_minus;
  const double mu_t = inclusion.mu_t;
  return {2.0 * (mu_m / mu_t - 1.0), 2.0 * (1.0 - mu_t / mu_m)};
}

}  // namespace msrimg
