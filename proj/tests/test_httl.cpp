#include <gtest/gtest.h>

#include "support.hpp"
#include "twotier/distortion.hpp"
#include "twotier/httl.hpp"

using namespace twotier;
using namespace twotier::testing;

namespace {

Scenario line_scenario(std::vector<double> a, std::vector<double> b, int m, double beta) {
  return Scenario(ConvexPolygon::rectangle({-5, -5}, {5, 5}), UniformDensity{}, std::move(a),
                  std::move(b), m, beta);
}

CellMoments moments(std::vector<double> v, std::vector<std::optional<Vec2>> c) {
  return CellMoments{std::move(v), std::move(c)};
}

}  // namespace

TEST(IndexMap, WeightedNearest) {
  // The second AP sits on FC 2 and only keeps N >= M.
  const Deployment d{{{0, 0}, {2, 0}}, {{1, 0}, {2, 0}}, {0, 1}};
  auto first = [&](double b11, double b12) {
    return update_index_map(line_scenario({1, 1}, {b11, b12, 1, 1}, 2, 1), d)[0];
  };
  EXPECT_EQ(first(1, 1), 0);
  EXPECT_EQ(first(4, 1), 0);  // 4 vs 4
  EXPECT_EQ(first(5, 1), 1);  // 5 vs 4
}

TEST(FcUpdate, WeightedMeans) {
  const Scenario equal = line_scenario({1, 1}, {1, 1}, 1, 1);
  const Deployment d{{{0, 0}, {2, 0}}, {{-4, 4}}, {0, 0}};
  const auto m = moments({0.5, 0.5}, {Vec2{}, Vec2{}});
  EXPECT_EQ(update_fc_positions(equal, d, m)[0], (Vec2{1, 0}));

  const Scenario weighted = line_scenario({1, 1}, {1, 3}, 1, 1);
  const Deployment e{{{0, 0}, {4, 0}}, {{-4, 4}}, {0, 0}};
  EXPECT_EQ(update_fc_positions(weighted, e, m)[0], (Vec2{3, 0}));

  const Scenario single = line_scenario({1}, {2}, 1, 1);
  EXPECT_EQ(update_fc_positions(single, Deployment{{{1.5, -2}}, {{0, 0}}, {0}},
                                moments({1.0}, {Vec2{}}))[0],
            (Vec2{1.5, -2}));
}

TEST(FcUpdate, MasslessFcStaysPut) {
  const Scenario s = line_scenario({1, 1}, {1, 1, 1, 1}, 2, 1);
  const Deployment d{{{0, 0}, {2, 0}}, {{0, 1}, {3, 3}}, {0, 0}};
  const auto q = update_fc_positions(s, d, moments({0.5, 0.5}, {Vec2{}, Vec2{}}));
  EXPECT_EQ(q[1], (Vec2{3, 3}));
}

TEST(ApUpdate, ConvexCombination) {
  const Scenario s = line_scenario({1}, {2}, 1, 1);
  const Deployment d{{{4, 4}}, {{3, 0}}, {0}};
  EXPECT_EQ(update_ap_positions(s, d, moments({1.0}, {Vec2{0, 0}}))[0], (Vec2{2, 0}));

  const Scenario zero_beta = line_scenario({1}, {2}, 1, 0);
  EXPECT_EQ(update_ap_positions(zero_beta, d, moments({1.0}, {Vec2{1, 1}}))[0], (Vec2{1, 1}));

  const Scenario balanced = line_scenario({2}, {4}, 1, 0.5);  // a = beta b
  EXPECT_EQ(update_ap_positions(balanced, d, moments({1.0}, {Vec2{1, 0}}))[0], (Vec2{2, 0}));

  EXPECT_EQ(update_ap_positions(s, d, moments({0.0}, {std::nullopt}))[0], (Vec2{3, 0}));
}

TEST(Run, FixedPointConvergesInOnePass) {
  const Scenario s = single_node(0.8);
  const Deployment start{{{0.5, 0.5}}, {{0.5, 0.5}}, {0}};
  const RunTrace t = httl_run(s, HttlConfig{1e-5, 100, 1, InitMode::Provided},
                              Integrator{IntegratorMode::MidpointGrid, 64}, start);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.iteration_count(), 1);
  EXPECT_EQ(t.final, start);
  EXPECT_EQ(t.stop_reason, StopReason::RelativeDrop);
}

TEST(Run, ValidatesInputs) {
  const Scenario s = single_node();
  const Integrator g{IntegratorMode::MidpointGrid, 32};
  EXPECT_THROW(httl_run(s, HttlConfig{0.0}, g), ValidationError);
  EXPECT_THROW(httl_run(s, HttlConfig{1e-5, 0}, g), ValidationError);
  EXPECT_THROW(httl_run(s, HttlConfig{1e-5, 10, 1, InitMode::Provided}, g), ValidationError);
  EXPECT_THROW(httl_run(s, HttlConfig{}, g, Deployment{{{0, 0}}, {{0, 0}}, {3}}), ValidationError);
}

TEST(Run, CapStopsTheLoop) {
  const Scenario s = preset("wsn1");
  const RunTrace t = httl_run(s, HttlConfig{1e-12, 3, 4}, Integrator{IntegratorMode::MidpointGrid, 64});
  EXPECT_EQ(t.iteration_count(), 3);
  EXPECT_FALSE(t.converged);
  EXPECT_EQ(t.stop_reason, StopReason::MaxIters);
}

TEST(Run, SeedsAreReproducible) {
  const Scenario s = preset("wsn2");
  const Integrator g{IntegratorMode::MidpointGrid, 96};
  const RunTrace a = httl_run(s, HttlConfig{1e-5, 100, 7}, g);
  const RunTrace b = httl_run(s, HttlConfig{1e-5, 100, 7}, g);
  EXPECT_EQ(a.final, b.final);
  EXPECT_EQ(a.final_distortion(), b.final_distortion());
  EXPECT_NE(random_deployment(s, 7), random_deployment(s, 8));
}

TEST(Run, MonotoneAndTerminatesOnPresets) {
  for (const char* name : {"wsn1", "wsn2"}) {
    const Scenario s = preset(name);
    const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 128});
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const RunTrace t = httl_run(s, HttlConfig{1e-5, 100, seed}, q);
      for (std::size_t i = 1; i < t.iterations.size(); ++i) {
        EXPECT_LE(t.iterations[i].distortion, t.iterations[i - 1].distortion * (1 + 1e-9));
      }
      EXPECT_LE(t.iteration_count(), 100);
      EXPECT_EQ(t.final_distortion(), distortion(q, s, t.final).distortion);
    }
  }
}

TEST(Run, ApsSitBetweenCentroidAndFc) {
  const Scenario s = preset("wsn1");
  const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 128});
  const RunTrace t = httl_run(s, HttlConfig{1e-5, 100, 2}, q);
  for (int n = 0; n < s.num_aps(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (t.update_moments.empty(n)) continue;
    const Vec2 fc = t.final.q[static_cast<std::size_t>(t.final.t[i])];
    EXPECT_LE(distance_to_segment(t.final.p[i], *t.update_moments.c[i], fc),
              1e-6 * s.omega().diameter());
  }
}

TEST(Probe, ZeroAtFixedPoint) {
  const Scenario s = single_node(0.5);
  const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 64});
  const StepDeltas d = step_monotonicity_probe(s, Deployment{{{0.5, 0.5}}, {{0.5, 0.5}}, {0}}, q);
  for (double x : d.delta) EXPECT_NEAR(x, 0.0, 1e-15);
  EXPECT_NEAR(d.fc_identity, 0.0, 1e-15);
}

TEST(Probe, EveryStepDescends) {
  const Scenario s = preset("wsn2");
  const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 128});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const StepDeltas d = step_monotonicity_probe(s, random_deployment(s, seed), q);
    for (double x : d.delta) EXPECT_LE(x, 1e-9 * d.initial);
    EXPECT_NEAR(d.delta[2], d.fc_identity, 1e-6 * std::abs(d.fc_identity) + 1e-15);
  }
}
