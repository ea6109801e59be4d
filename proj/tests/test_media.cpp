#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "msrimg/errors.hpp"
#include "msrimg/media.hpp"

using namespace msrimg;

TEST(Media, VacuumWavenumbers) {
  const auto ctx = frequency_context({1, 1, 1, 1}, 2 * std::numbers::pi);
  EXPECT_NEAR(ctx.k_plus, 2 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(ctx.k_minus, 2 * std::numbers::pi, 1e-15);
  EXPECT_DOUBLE_EQ(ctx.xi, 1.0);
  EXPECT_NEAR(ctx.lambda_minus, 1.0, 1e-15);
}

TEST(Media, RefractionRatio) {
  EXPECT_NEAR(frequency_context({5, 1, 4, 1}, 1.0).xi, std::sqrt(5.0) / 2.0, 1e-15);
  EXPECT_NEAR(frequency_context({5, 1, 4, 1}, 1.0).xi, 1.118034, 1e-6);
  EXPECT_NEAR(frequency_context({1, 1, 3, 1}, 1.0).xi, 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Media, FrequencyContextRejectsBadInput) {
  EXPECT_THROW(frequency_context({1, 1, 1, 1}, 0.0), DomainError);
  EXPECT_THROW(frequency_context({1, 1, 1, 1}, -2.0), DomainError);
  EXPECT_THROW(frequency_context({1, 0, 1, 1}, 1.0), DomainError);
}

TEST(Media, NormalIncidenceIsFixed) {
  for (double xi_medium : {1.0, 3.0, 5.0}) {
    const auto ctx = frequency_context({xi_medium, 1, 1, 1}, 1.0);
    const Vec2 v = transmitted_direction(ctx, Vec2(0, -1));
    EXPECT_NEAR(v.x(), 0.0, 1e-15);
    EXPECT_NEAR(v.y(), -1.0, 1e-15);
  }
}

TEST(Media, MatchedMediaIdentity) {
  const auto ctx = frequency_context({2, 1, 2, 1}, 3.0);
  for (double a = 0.1; a < std::numbers::pi; a += 0.2) {
    const Vec2 x(std::cos(a), -std::sin(a));
    EXPECT_NEAR((transmitted_direction(ctx, x) - x).norm(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(transmission_coefficient(ctx, {2, 1, 2, 1}, x) - 1.0), 0.0, 1e-12);
  }
}

TEST(Media, HalfRatioRefraction) {
  // xi = 0.5 from eps_+ = 1, eps_- = 4
  const auto ctx = frequency_context({1, 1, 4, 1}, 1.0);
  ASSERT_DOUBLE_EQ(ctx.xi, 0.5);
  const Vec2 v = transmitted_direction(ctx, Vec2(std::sqrt(0.5), -std::sqrt(0.5)));
  EXPECT_NEAR(v.x(), 0.353553, 1e-6);
  EXPECT_NEAR(v.y(), -std::sqrt(1 - 0.125), 1e-15);
}

TEST(Media, TransmissionExamples) {
  // xi = 1 with mu_+ = 5, mu_- = 4: eps chosen so that eps mu matches
  const HalfSpaceMedium m{4, 5, 5, 4};
  const auto ctx = frequency_context(m, 1.0);
  ASSERT_NEAR(ctx.xi, 1.0, 1e-15);
  EXPECT_NEAR(transmission_coefficient(ctx, m, Vec2(0, -1)).real(), 8.0 / 9.0, 1e-15);

  for (double eps_plus : {0.5, 2.0, 7.0}) {
    const HalfSpaceMedium mm{eps_plus, 1, 1, 1};
    const auto c = frequency_context(mm, 1.0);
    EXPECT_NEAR(transmission_coefficient(c, mm, Vec2(0, -1)).real(), 2 * c.xi / (c.xi + 1), 1e-15);
  }
}

TEST(Media, PropagationFilter) {
  const auto ctx = frequency_context({5, 1, 4, 1}, 1.0);
  const double q = std::numbers::pi / 4, t = std::numbers::pi / 12;
  EXPECT_TRUE(is_propagating(ctx, Vec2(std::cos(q), -std::sin(q))));
  EXPECT_FALSE(is_propagating(ctx, Vec2(std::cos(t), -std::sin(t))));
  EXPECT_THROW(transmitted_direction(ctx, Vec2(std::cos(t), -std::sin(t))), EvanescentDirectionError);
  EXPECT_THROW(transmitted_direction(ctx, Vec2(1, 0)), GrazingDirectionError);
  EXPECT_THROW(transmission_coefficient(ctx, {5, 1, 4, 1}, Vec2(-1, 0)), GrazingDirectionError);

  const auto slow = frequency_context({1, 1, 3, 1}, 1.0);
  for (double a = 0.01; a < std::numbers::pi; a += 0.01) EXPECT_TRUE(is_propagating(slow, Vec2(std::cos(a), -std::sin(a))));
}

TEST(Media, PolarizationTensorValues) {
  auto t = polarization_tensor({1, 1, 1, 4}, {1, 4});
  EXPECT_DOUBLE_EQ(t.lambda_tau, 0.0);
  EXPECT_DOUBLE_EQ(t.lambda_n, 0.0);
  t = polarization_tensor({1, 5, 1, 4}, {1, 5});
  EXPECT_NEAR(t.lambda_tau, -0.4, 1e-15);
  EXPECT_NEAR(t.lambda_n, -0.5, 1e-15);
  // mu_- = 3, mu_T = 5: 2(3/5 - 1) = -0.8 and 2(1 - 5/3) = -4/3
  t = polarization_tensor({1, 1, 1, 3}, {1, 5});
  EXPECT_NEAR(t.lambda_tau, -0.8, 1e-15);
  EXPECT_NEAR(t.lambda_n, -4.0 / 3.0, 1e-15);
}

TEST(Media, QuadraticFormIgnoresNormalSign) {
  const auto t = polarization_tensor({1, 1, 1, 3}, {1, 5});
  const Vec2 tau = Vec2(1, 2).normalized();
  const Vec2 n(-tau.y(), tau.x());
  const Vec2 v(0.6, -0.8), w(-0.28, -0.96);
  EXPECT_NEAR(std::abs(t.quadratic_form(v, w, tau, n) - t.quadratic_form(v, w, -tau, -n)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.quadratic_form(v, w, tau, n) - t.quadratic_form(v, w, tau, -n)), 0.0, 1e-15);
}
