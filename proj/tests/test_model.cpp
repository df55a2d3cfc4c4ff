#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twotier/model.hpp"
#include "twotier/presets.hpp"

using namespace twotier;
using twotier::testing::unit_square;

namespace {

const char* kMinimal = R"({
  "omega": {"vertices": [[0,0],[2,0],[2,1],[0,1]]},
  "density": {"kind": "uniform"},
  "n_aps": 2, "n_fcs": 1, "a": [1, 2], "b": [3, 4], "beta": 0.5
})";

std::string with(const std::string& base, const std::string& from, const std::string& to) {
  std::string out = base;
  out.replace(out.find(from), from.size(), to);
  return out;
}

}  // namespace

TEST(Geometry, PolygonBasics) {
  const ConvexPolygon sq = ConvexPolygon::rectangle({0, 0}, {2, 1});
  EXPECT_DOUBLE_EQ(sq.area(), 2.0);
  EXPECT_EQ(sq.centroid(), (Vec2{1.0, 0.5}));
  EXPECT_DOUBLE_EQ(sq.diameter(), std::sqrt(5.0));
  EXPECT_TRUE(sq.contains({2.0, 1.0}));
  EXPECT_TRUE(sq.contains({1.0, 0.0}));
  EXPECT_FALSE(sq.contains({2.0001, 0.5}));
  const ConvexPolygon tri({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_DOUBLE_EQ(tri.area(), 0.5);
  EXPECT_NEAR(tri.centroid().x, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(tri.contains({0.6, 0.6}));
}

TEST(Geometry, RejectsBadPolygons) {
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);  // clockwise
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);  // collinear
  EXPECT_THROW(ConvexPolygon({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}}), std::invalid_argument);
}

TEST(Geometry, SegmentDistance) {
  EXPECT_DOUBLE_EQ(distance_to_segment({1, 1}, {0, 0}, {2, 0}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({3, 0}, {0, 0}, {2, 0}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({1, 1}, {1, 1}, {1, 1}), 0.0);
}

TEST(Scenario, Invariants) {
  EXPECT_THROW(Scenario(unit_square(), UniformDensity{}, {1.0}, {1.0, 1.0}, 2, 1.0),
               ValidationError);
  EXPECT_THROW(Scenario(unit_square(), UniformDensity{}, {1.0}, {}, 0, 1.0), ValidationError);
  EXPECT_THROW(Scenario(unit_square(), UniformDensity{}, {0.0}, {1.0}, 1, 1.0), ValidationError);
  EXPECT_THROW(Scenario(unit_square(), UniformDensity{}, {1.0}, {-1.0}, 1, 1.0), ValidationError);
  EXPECT_THROW(Scenario(unit_square(), UniformDensity{}, {1.0}, {1.0}, 1, -1.0), ValidationError);
  try {
    Scenario(unit_square(), UniformDensity{}, {1.0}, {1.0, 1.0}, 2, 1.0);
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("N < M"), std::string::npos);
  }
}

TEST(Scenario, TabulatedDensityMustIntegrateToOne) {
  const TabulatedDensity ok{2, 1, {0.5, 1.5}};
  const Scenario s(unit_square(), ok, {1.0}, {1.0}, 1, 0.0);
  EXPECT_DOUBLE_EQ(s.density({0.25, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(s.density({0.75, 0.5}), 1.5);
  EXPECT_DOUBLE_EQ(s.density({1.5, 0.5}), 0.0);
  EXPECT_THROW(Scenario(unit_square(), TabulatedDensity{2, 1, {1.0, 1.5}}, {1.0}, {1.0}, 1, 0.0),
               ValidationError);
  EXPECT_THROW(Scenario(unit_square(), TabulatedDensity{2, 2, {1.0, 1.0}}, {1.0}, {1.0}, 1, 0.0),
               ValidationError);
  EXPECT_THROW(Scenario(unit_square(), TabulatedDensity{2, 1, {-1.0, 3.0}}, {1.0}, {1.0}, 1, 0.0),
               ValidationError);
}

TEST(Scenario, UniformDensityIsInverseArea) {
  const Scenario s(ConvexPolygon::rectangle({0, 0}, {10, 10}), UniformDensity{}, {1.0}, {1.0}, 1,
                   0.0);
  EXPECT_DOUBLE_EQ(s.density({5, 5}), 0.01);
}

TEST(Scenario, WithFcCountDropsColumns) {
  const Scenario s(unit_square(), UniformDensity{}, {1, 1}, {1, 2, 3, 4}, 2, 0.5);
  const Scenario one = s.with_fc_count(1);
  EXPECT_EQ(one.num_fcs(), 1);
  EXPECT_DOUBLE_EQ(one.b(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(one.b(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(s.with_beta(2.0).beta(), 2.0);
}

TEST(DeriveWeight, UnitAtFourPiWavelength) {
  PhysicalLayerParams p;
  p.lambda = 4 * std::numbers::pi;
  EXPECT_NEAR(derive_weight(p), 1.0, 1e-15);
}

TEST(DeriveWeight, MonotoneInEveryParameter) {
  const PhysicalLayerParams base;
  const double w0 = derive_weight(base);
  auto bumped = [&](double PhysicalLayerParams::*field) {
    PhysicalLayerParams p = base;
    p.*field *= 1.5;
    return derive_weight(p);
  };
  EXPECT_GT(bumped(&PhysicalLayerParams::gamma), w0);
  EXPECT_GT(bumped(&PhysicalLayerParams::n0), w0);
  EXPECT_LT(bumped(&PhysicalLayerParams::g_t), w0);
  EXPECT_LT(bumped(&PhysicalLayerParams::g_r), w0);
  EXPECT_LT(bumped(&PhysicalLayerParams::lambda), w0);
  EXPECT_LT(bumped(&PhysicalLayerParams::zeta), w0);
}

TEST(DeriveWeight, RejectsNonpositive) {
  PhysicalLayerParams p;
  p.n0 = 0.0;
  EXPECT_THROW(derive_weight(p), std::domain_error);
  p = {};
  p.lambda = -1.0;
  EXPECT_THROW(derive_weight(p), std::domain_error);
}

TEST(ValidateDeployment, ReportsEachKind) {
  const Scenario s = twotier::testing::preset("wsn1");
  Deployment d = random_deployment(s, 3);
  EXPECT_TRUE(validate_deployment(s, d).empty());

  Deployment bad_range = d;
  bad_range.t[0] = 1;
  const auto r = validate_deployment(s, bad_range);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(r.front().rfind("range", 0), 0u);

  Deployment bad_dim = d;
  bad_dim.p.pop_back();
  const auto e = validate_deployment(s, bad_dim);
  ASSERT_FALSE(e.empty());
  EXPECT_EQ(e.front().rfind("dimension", 0), 0u);

  Deployment bad_value = d;
  bad_value.q[0].x = std::nan("");
  EXPECT_FALSE(validate_deployment(s, bad_value).empty());
}

TEST(Config, ParsesMinimal) {
  const ScenarioConfig c = parse_scenario_config(kMinimal);
  EXPECT_EQ(c.scenario.num_aps(), 2);
  EXPECT_DOUBLE_EQ(c.scenario.a(1), 2.0);
  EXPECT_DOUBLE_EQ(c.scenario.b(1, 0), 4.0);
  EXPECT_DOUBLE_EQ(c.scenario.beta(), 0.5);
  EXPECT_EQ(c.settings.seed, 1u);
  EXPECT_EQ(c.settings.max_iters, 100);
  EXPECT_EQ(c.settings.grid_resolution, 512);
  EXPECT_FALSE(c.rho.has_value());
}

TEST(Config, SchemaErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      parse_scenario_config(text);
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(with(kMinimal, "\"a\": [1, 2]", "\"a\": [1]")), "a");
  EXPECT_EQ(field_of(with(kMinimal, "\"b\": [3, 4]", "\"b\": [3]")), "b");
  EXPECT_EQ(field_of(with(kMinimal, "\"uniform\"", "\"gaussian\"")), "density.kind");
  EXPECT_EQ(field_of(with(kMinimal, "\"beta\": 0.5", "\"beta\": \"x\"")), "beta");
  EXPECT_EQ(field_of(with(kMinimal, "\"n_fcs\": 1, ", "")), "n_fcs");
  EXPECT_EQ(field_of("{not json"), "<document>");
}

TEST(Config, InvariantViolationsAreValidationErrors) {
  EXPECT_THROW(parse_scenario(with(with(kMinimal, "\"n_fcs\": 1", "\"n_fcs\": 0"), "\"b\": [3, 4]",
                                   "\"b\": []")),
               ValidationError);
  EXPECT_THROW(parse_scenario(with(kMinimal, "\"beta\": 0.5", "\"beta\": -1")), ValidationError);
}

TEST(Config, RhoIsAcceptedAndIgnored) {
  const ScenarioConfig c =
      parse_scenario_config(with(kMinimal, "\"beta\": 0.5", "\"beta\": 0.5, \"rho\": 3.5"));
  ASSERT_TRUE(c.rho.has_value());
  EXPECT_DOUBLE_EQ(*c.rho, 3.5);
}

TEST(Config, TableDensity) {
  const std::string text = with(kMinimal, "{\"kind\": \"uniform\"}",
                                R"({"kind": "table", "table": {"nx": 2, "ny": 1, "values": [0.25, 0.75]}})");
  const Scenario s = parse_scenario(text);
  EXPECT_DOUBLE_EQ(s.density({0.5, 0.5}), 0.25);
  EXPECT_DOUBLE_EQ(s.density({1.5, 0.5}), 0.75);
}

TEST(Config, RoundTripIsExact) {
  for (const std::string& name : preset_names()) {
    const ScenarioConfig c = load_preset(name);
    const ScenarioConfig back = parse_scenario_config(serialize_scenario_config(c));
    EXPECT_EQ(back.name, c.name);
    EXPECT_EQ(back.scenario.a_weights(), c.scenario.a_weights());
    EXPECT_EQ(back.scenario.b_weights(), c.scenario.b_weights());
    EXPECT_EQ(back.scenario.beta(), c.scenario.beta());
    EXPECT_EQ(back.scenario.num_fcs(), c.scenario.num_fcs());
    EXPECT_TRUE(std::ranges::equal(back.scenario.omega().vertices(), c.scenario.omega().vertices()));
    EXPECT_EQ(back.settings.seed, c.settings.seed);
    EXPECT_EQ(back.settings.epsilon, c.settings.epsilon);
    EXPECT_EQ(back.settings.max_iters, c.settings.max_iters);
    EXPECT_EQ(back.settings.grid_resolution, c.settings.grid_resolution);
    EXPECT_EQ(back.display.strong_aps, c.display.strong_aps);
    EXPECT_EQ(back.display.strong_fcs, c.display.strong_fcs);
  }
  // Irrational reals and a tabulated density survive the trip too.
  const Scenario s(ConvexPolygon({{0.1, 0.2}, {std::numbers::pi, 0.3}, {1.7, std::numbers::e}}),
                   UniformDensity{}, {1.0 / 3.0, std::sqrt(2.0)}, {0.1, 0.7}, 1, 1.0 / 7.0);
  const ScenarioConfig c{"odd", s, RunSettings{}, DisplayGroups{}, std::nullopt};
  const ScenarioConfig back = parse_scenario_config(serialize_scenario_config(c));
  EXPECT_EQ(back.scenario.a_weights(), s.a_weights());
  EXPECT_EQ(back.scenario.beta(), s.beta());
  EXPECT_TRUE(std::ranges::equal(back.scenario.omega().vertices(), s.omega().vertices()));
}

TEST(Presets, EncodeTheTableWeights) {
  const ScenarioConfig w1 = load_preset("wsn1");
  const Scenario& s1 = w1.scenario;
  ASSERT_EQ(s1.num_aps(), 20);
  ASSERT_EQ(s1.num_fcs(), 1);
  for (int n = 0; n < 20; ++n) {
    EXPECT_DOUBLE_EQ(s1.a(n), n < 10 ? 1.0 : 2.0);
    EXPECT_DOUBLE_EQ(s1.b(n, 0), n < 4 ? 1.0 : 2.0);
  }
  EXPECT_DOUBLE_EQ(s1.density({5, 5}), 0.01);
  EXPECT_EQ(w1.display.strong_aps.size(), 10u);
  EXPECT_EQ(w1.display.strong_aps.front(), 0);
  EXPECT_EQ(w1.display.strong_fcs, std::vector<int>{0});

  const ScenarioConfig w2 = load_preset("wsn2");
  const Scenario& s2 = w2.scenario;
  ASSERT_EQ(s2.num_aps(), 20);
  ASSERT_EQ(s2.num_fcs(), 4);
  for (int n = 0; n < 20; ++n) {
    const double scale = n < 4 ? 1.0 : 2.0;
    EXPECT_DOUBLE_EQ(s2.b(n, 0), scale);
    EXPECT_DOUBLE_EQ(s2.b(n, 1), scale);
    EXPECT_DOUBLE_EQ(s2.b(n, 2), 2 * scale);
    EXPECT_DOUBLE_EQ(s2.b(n, 3), 2 * scale);
  }
  EXPECT_EQ(w2.display.strong_fcs, (std::vector<int>{0, 1}));
  EXPECT_THROW(load_preset("wsn3"), ValidationError);
}
