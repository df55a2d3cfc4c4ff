#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "twotier/voronoi.hpp"

using namespace twotier;
using namespace twotier::testing;

namespace {

Scenario plane(std::vector<double> a, std::vector<double> b, int m, double beta) {
  return Scenario(ConvexPolygon::rectangle({-20, -20}, {20, 20}), UniformDensity{}, std::move(a),
                  std::move(b), m, beta);
}

std::vector<Vec2> uniform_samples(const ConvexPolygon& omega, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const BoundingBox& box = omega.bounds();
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec2 w{ux(rng), uy(rng)};
    if (omega.contains(w)) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST(CellCost, HandValues) {
  const Scenario s = plane({1.0}, {1.0}, 1, 1.0);
  const Deployment d{{{0, 0}}, {{0, 0}}, {0}};
  EXPECT_DOUBLE_EQ(cell_cost(0, {3, 4}, s, d), 25.0);
  EXPECT_DOUBLE_EQ(cell_cost(0, {0, 0}, s, d), 0.0);
  const Deployment apart{{{0, 0}}, {{1, 0}}, {0}};
  EXPECT_DOUBLE_EQ(cell_cost(0, {3, 4}, s, apart), 26.0);
  EXPECT_THROW(cell_cost(1, {0, 0}, s, d), std::out_of_range);
}

TEST(Owner, TiesGoToSmallerIndex) {
  const Scenario s = plane({1.0, 1.0}, {1.0, 1.0}, 1, 0.5);
  const Deployment twins{{{1, 1}, {1, 1}}, {{0, 0}}, {0, 0}};
  for (const Vec2 w : {Vec2{0, 0}, Vec2{5, -3}, Vec2{-19, 19}}) EXPECT_EQ(owner(w, s, twins), 0);
  const Deployment split{{{-1, 0}, {1, 0}}, {{0, 0}}, {0, 0}};
  EXPECT_EQ(owner({0, 7}, s, split), 0);  // exactly on the bisector
}

TEST(Owner, NearerApWithEqualWeights) {
  const Scenario s = plane({1.0, 1.0}, {1.0, 1.0}, 1, 0.0);
  const Deployment d{{{0, 0}, {10, 0}}, {{0, 0}}, {0, 0}};
  EXPECT_EQ(owner({2, 0}, s, d), 0);
  EXPECT_EQ(owner({6, 0}, s, d), 1);
}

TEST(Owner, DominatedApOwnsNothing) {
  const Scenario s(ConvexPolygon::rectangle({0, 0}, {1, 1e-3}), UniformDensity{}, {1.0, 100.0},
                   {1.0, 100.0}, 1, 1.0);
  const Deployment d{{{0.5, 5e-4}, {0.0, 5e-4}}, {{0.5, 5e-4}}, {0, 0}};
  for (int i = 0; i <= 100; ++i) EXPECT_EQ(owner({i / 100.0, 5e-4}, s, d), 0);
}

TEST(Pairwise, Classification) {
  // Equal a: half-plane.
  {
    const Scenario s = plane({1.0, 1.0}, {1.0, 1.0}, 1, 0.0);
    const Deployment d{{{0, 0}, {2, 0}}, {{0, 0}}, {0, 0}};
    const PairwiseRegion r = pairwise_region(0, 1, s, d);
    EXPECT_EQ(r.kind, RegionKind::HalfSpace);
    EXPECT_TRUE(r.contains({0.9, 3}));
    EXPECT_FALSE(r.contains({1.1, 3}));
  }
  // a_i > a_j: disk about c_ij = (a_i p_i - a_j p_j) / (a_i - a_j).
  {
    const Scenario s = plane({2.0, 1.0}, {1.0, 1.0}, 1, 0.0);
    const Deployment d{{{0, 0}, {3, 0}}, {{0, 0}}, {0, 0}};
    const PairwiseRegion r = pairwise_region(0, 1, s, d);
    EXPECT_EQ(r.kind, RegionKind::Disk);
    EXPECT_DOUBLE_EQ(r.center.x, -3.0);
    EXPECT_DOUBLE_EQ(r.center.y, 0.0);
    EXPECT_DOUBLE_EQ(r.l, 18.0);  // 2 * 1 * 9 / 1
    const PairwiseRegion flip = pairwise_region(1, 0, s, d);
    EXPECT_EQ(flip.kind, RegionKind::DiskComplement);
    EXPECT_DOUBLE_EQ(flip.center.x, -3.0);
  }
  // Large beta: the heavier AP's additive term wipes out its disk.
  {
    const Scenario s = plane({2.0, 1.0}, {1.0, 1.0}, 1, 10.0);
    const Deployment d{{{0, 0}, {3, 0}}, {{10, 0}}, {0, 0}};
    EXPECT_EQ(pairwise_region(0, 1, s, d).kind, RegionKind::Empty);
    EXPECT_EQ(pairwise_region(1, 0, s, d).kind, RegionKind::WholePlane);
  }
  EXPECT_THROW(pairwise_region(0, 0, plane({1, 1}, {1, 1}, 1, 0), Deployment{{{0, 0}, {1, 1}}, {{0, 0}}, {0, 0}}),
               std::domain_error);
}

TEST(Pairwise, MatchesDirectComparisonOffBoundary) {
  const Scenario s = random_heterogeneous(6, 2, 0.4, 17);
  const Deployment d = random_deployment(s, 17);
  const double delta = 1e-6 * s.omega().diameter();
  const std::vector<Vec2> samples = uniform_samples(s.omega(), 5000, 3);
  for (int i = 0; i < s.num_aps(); ++i) {
    for (int j = 0; j < s.num_aps(); ++j) {
      if (i == j) continue;
      const PairwiseRegion r = pairwise_region(i, j, s, d);
      for (const Vec2 w : samples) {
        const double gap = cell_cost(i, w, s, d) - cell_cost(j, w, s, d);
        if (std::abs(gap) < delta) continue;
        EXPECT_EQ(r.contains(w), gap <= 0.0) << i << ' ' << j;
      }
    }
  }
}

TEST(Membership, AgreesWithOwner) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = random_heterogeneous(8, 3, 0.5, seed);
    const Deployment d = random_deployment(s, seed + 100);
    EXPECT_GE(membership_agreement(s, d, uniform_samples(s.omega(), 20000, seed)), 0.999);
  }
  const Scenario one = single_node();
  EXPECT_EQ(membership_agreement(one, Deployment{{{0.2, 0.2}}, {{0.5, 0.5}}, {0}},
                                 uniform_samples(one.omega(), 100, 1)),
            1.0);
  EXPECT_THROW(membership_agreement(one, Deployment{{{0.2, 0.2}}, {{0.5, 0.5}}, {0}}, {}),
               std::invalid_argument);
}

TEST(Owner, TranslationAndScalingInvariance) {
  const Scenario s = random_heterogeneous(7, 2, 0.6, 5);
  const Deployment d = random_deployment(s, 8);
  const std::vector<Vec2> samples = uniform_samples(s.omega(), 3000, 4);
  const Vec2 shift{-3.25, 7.5};
  const double factor = 0.5;  // power of two keeps the arithmetic exact
  auto moved = [&](Vec2 v, bool scale) { return scale ? factor * v : v + shift; };
  for (bool scale : {false, true}) {
    std::vector<Vec2> verts;
    for (Vec2 v : s.omega().vertices()) verts.push_back(moved(v, scale));
    const Scenario t(ConvexPolygon(verts), UniformDensity{}, s.a_weights(), s.b_weights(),
                     s.num_fcs(), s.beta());
    Deployment e = d;
    for (Vec2& p : e.p) p = moved(p, scale);
    for (Vec2& q : e.q) q = moved(q, scale);
    int disagreements = 0;
    for (const Vec2 w : samples) disagreements += owner(w, s, d) != owner(moved(w, scale), t, e);
    // Translation rounds coordinates, which can flip samples sitting on a
    // boundary; scaling by a power of two is exact.
    if (scale) {
      EXPECT_EQ(disagreements, 0);
    } else {
      EXPECT_LE(disagreements, 1);
    }
  }
}
