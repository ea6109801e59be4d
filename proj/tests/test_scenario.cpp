#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "msrimg/errors.hpp"
#include "msrimg/scenario.hpp"

using namespace msrimg;
constexpr double kPi = std::numbers::pi;

namespace {

bool mentions(const std::vector<Diagnostic>& ds, Severity sev, const std::string& text) {
  for (const auto& d : ds)
    if (d.severity == sev && (d.path + d.message).find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Scenario, TablePresets) {
  const auto a = preset("table1-gamma1");
  EXPECT_EQ(a.direction_count, 32u);
  EXPECT_EQ(a.frequency_count, 30u);
  EXPECT_NEAR(a.omega_min, 2 * kPi / 0.4, 1e-14);
  EXPECT_NEAR(a.omega_max, 2 * kPi / 0.2, 1e-14);
  EXPECT_EQ(a.medium.eps_plus, 5.0);
  EXPECT_EQ(a.medium.eps_minus, 4.0);
  ASSERT_EQ(a.inclusions.size(), 1u);
  EXPECT_EQ(a.inclusions[0].material.eps_t, 5.0);
  EXPECT_EQ(a.inclusions[0].curve.thickness(), 0.015);
  ASSERT_TRUE(a.snr_db);
  EXPECT_EQ(*a.snr_db, 20.0);
  EXPECT_EQ(a.svd_threshold, 0.01);
  EXPECT_EQ(a.grid_step, 0.02);

  const auto b = preset("table2-gammaM");
  EXPECT_EQ(b.direction_count, 50u);
  EXPECT_EQ(b.frequency_count, 42u);
  EXPECT_NEAR(b.omega_min, 2 * kPi / 0.2, 1e-14);
  EXPECT_NEAR(b.omega_max, 2 * kPi / 0.1, 1e-14);
  EXPECT_EQ(b.inclusions.size(), 2u);

  const auto c = preset("table3-gamma2");
  EXPECT_EQ(c.direction_count, 48u);
  EXPECT_EQ(c.frequency_count, 40u);
  EXPECT_NEAR(c.omega_min, 2 * kPi / 0.3, 1e-14);
  EXPECT_NEAR(c.omega_max, 2 * kPi / 0.2, 1e-14);
  EXPECT_EQ(c.inclusions[0].curve.kind(), CurveKind::Sigma2);

  const auto v = preset("table1-gammaM-contrast-10-5");
  EXPECT_EQ(v.inclusions[0].material.eps_t, 10.0);
  EXPECT_EQ(v.inclusions[1].material.eps_t, 5.0);

  const auto air = preset("table2-gamma1-air");
  EXPECT_EQ(air.medium.mu_plus, 1.0);
  EXPECT_EQ(air.medium.mu_minus, 3.0);
  EXPECT_EQ(reported_n_plus("table1-gamma1"), 24u);
  EXPECT_FALSE(reported_n_plus("custom"));
}

TEST(Scenario, UnknownPresetListsCatalog) {
  try {
    preset("table9");
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("table1-gamma1"), std::string::npos);
  }
}

TEST(Scenario, PresetsHaveNoErrors) {
  for (const auto& name : preset_names()) EXPECT_FALSE(has_errors(validate(preset(name)))) << name;
}

TEST(Scenario, PresetJsonRoundTripIsByteIdentical) {
  for (const auto& name : preset_names()) {
    const std::string text = to_json(preset(name));
    EXPECT_EQ(to_json(scenario_from_json(text)), text) << name;
  }
}

TEST(Scenario, HashIsStableAndSensitive) {
  auto s = preset("table1-gamma1");
  EXPECT_EQ(scenario_hash(s), scenario_hash(preset("table1-gamma1")));
  EXPECT_EQ(scenario_hash(s).size(), 16u);
  s.seed = 43;
  EXPECT_NE(scenario_hash(s), scenario_hash(preset("table1-gamma1")));
}

TEST(Scenario, CurveAboveInterfaceIsAnError) {
  auto s = preset("table1-gamma1");
  s.inclusions.push_back({ParametricCurve::polyline({Vec2(0, -0.5), Vec2(0.2, 0.1)}, 0.015, "bad-line"), {5, 1}});
  const auto d = validate(s);
  EXPECT_TRUE(has_errors(d));
  EXPECT_TRUE(mentions(d, Severity::Error, "bad-line"));
  EXPECT_TRUE(mentions(d, Severity::Error, "curves[1]"));
}

TEST(Scenario, ThinInclusionWarning) {
  // lambda_- at omega_F = 2 pi / 0.1 with eps_- = 4 is 0.05, and h = 0.015 > 0.005
  auto s = preset("table1-gamma2");
  const auto d = validate(s);
  EXPECT_FALSE(has_errors(d));
  EXPECT_TRUE(mentions(d, Severity::Warning, "thickness"));
}

TEST(Scenario, OtherViolations) {
  auto s = preset("table1-gamma1");
  s.search_domain = {-1, 1, -3, 0.5};
  EXPECT_TRUE(mentions(validate(s), Severity::Error, "imaging.domain"));
  s = preset("table1-gamma1");
  s.search_domain = {-1, 1, -1.55, -1.0};
  EXPECT_TRUE(mentions(validate(s), Severity::Warning, "not contained"));
  s = preset("table1-gamma1");
  s.svd_threshold = 1.5;
  EXPECT_TRUE(has_errors(validate(s)));
  s = preset("table1-gamma1");
  s.steering = SteeringConfig{0, 0, 0};
  EXPECT_TRUE(has_errors(validate(s)));
  s = preset("table1-gamma1");
  s.frequency_count = 0;
  EXPECT_TRUE(has_errors(validate(s)));
}

TEST(Scenario, FrequencyList) {
  Scenario s;
  s.frequency_count = 2;
  s.omega_min = 3;
  s.omega_max = 7;
  EXPECT_EQ(frequency_list(s), (std::vector<double>{3, 7}));
  s.frequency_count = 3;
  s.omega_min = 2 * kPi / 0.4;
  s.omega_max = 2 * kPi / 0.2;
  EXPECT_NEAR(frequency_list(s)[1], 3 * kPi / 0.4, 1e-12);
  EXPECT_NEAR(frequency_list(s)[1], 23.5619449, 1e-7);
  s.frequency_count = 1;
  EXPECT_NEAR(frequency_list(s)[0], 3 * kPi / 0.4, 1e-12);
  const auto f = frequency_list(preset("table1-gamma1"));
  ASSERT_EQ(f.size(), 30u);
  for (std::size_t i = 1; i < f.size(); ++i) EXPECT_GT(f[i], f[i - 1]);
}

TEST(Scenario, ResolveSteering) {
  EXPECT_EQ(resolve_steering(preset("table1-gamma1")), (SteeringConfig{1, 0, 0}));
  EXPECT_EQ(resolve_steering(preset("table2-gamma1")), (SteeringConfig{0, 0, 1}));
  EXPECT_EQ(resolve_steering(preset("table3-gamma1")), (SteeringConfig{1, 0, 1}));
  auto s = preset("table2-gamma1");
  s.steering = SteeringConfig{0, 1, 0};
  EXPECT_EQ(resolve_steering(s), (SteeringConfig{0, 1, 0}));
}

TEST(Scenario, JsonErrorsNameTheField) {
  auto expect_field = [](const std::string& text, const std::string& field) {
    try {
      scenario_from_json(text);
      FAIL() << "no error for " << field;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  std::string good = to_json(preset("table1-gamma1"));
  expect_field("{", "scenario");
  std::string bad = good;
  bad.replace(bad.find("\"eps_minus\": 4.0"), 16, "\"eps_minus\": \"x\"");
  expect_field(bad, "medium.eps_minus");
  bad = good;
  bad.replace(bad.find("\"sigma1\""), 8, "\"spiral\"");
  expect_field(bad, "curves[0].kind");
  bad = good;
  bad.replace(bad.find("\"fine\""), 6, "\"born\"");
  expect_field(bad, "output.forward_model");
}

TEST(Scenario, CustomCurvesSurviveJson) {
  Scenario s = preset("table1-gamma1");
  s.name = "custom";
  s.inclusions = {{ParametricCurve::polyline({Vec2(-0.3, -1.2), Vec2(0.1, -1.9), Vec2(0.5, -1.4)}), {7, 2}},
                  {ParametricCurve::points({Vec2(0, -2.5)}, {0.2}), {1, 3}}};
  s.steering = SteeringConfig{1, 0.5, 0};
  s.snr_db.reset();
  const Scenario back = scenario_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
  EXPECT_EQ(back.inclusions[0].curve.vertices().size(), 3u);
  EXPECT_FALSE(back.snr_db);
  EXPECT_EQ(back.steering, s.steering);
}
