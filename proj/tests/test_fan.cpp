#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricox;
using namespace toricox::testing;

TEST(Fan, RejectsMalformedInput) {
  EXPECT_THROW(fan(2, {{2, 0}, {0, 1}}, {{0, 1}}), InputRejected);            // non-primitive ray
  EXPECT_THROW(fan(2, {{1, 0}, {1, 0}}, {{0}, {1}}), InputRejected);          // duplicate ray
  EXPECT_THROW(fan(2, {{1, 0}, {0, 1}}, {{0, 2}}), InputRejected);            // index out of range
  EXPECT_THROW(fan(2, {{1, 0}, {-1, 0}}, {{0, 1}}), InputRejected);           // not strongly convex
  EXPECT_THROW(fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}}), InputRejected);    // unused ray
  // two cones overlapping in their interiors
  EXPECT_THROW(fan(2, {{1, 0}, {0, 1}, {1, 2}}, {{0, 1}, {0, 2}}), InputRejected);
}

TEST(Fan, Predicates) {
  auto p2 = catalog_fan("p2");
  EXPECT_TRUE(is_complete(p2));
  EXPECT_TRUE(is_simplicial(p2));
  EXPECT_TRUE(is_smooth(p2));
  auto chart = fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}});
  EXPECT_FALSE(is_complete(chart));
  auto qc = catalog_fan("quadric-cone");
  EXPECT_FALSE(is_smooth(qc));
  EXPECT_EQ(multiplicity(qc.ray_vectors(qc.cones()[0]), 2), 2);
  // the weighted plane P(1,1,2)
  auto w = cyclic_fan({{1, 0}, {0, 1}, {-1, -2}});
  EXPECT_TRUE(is_complete(w));
  EXPECT_FALSE(is_smooth(w));
  // a 3D cone over a square is not simplicial
  auto sq = fan(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, {{0, 1, 2, 3}});
  EXPECT_FALSE(is_simplicial(sq));
}

TEST(Fan, ParallelepipedHasMultiplicityPoints) {
  std::vector<IntVec> rays{iv({1, 0}), iv({1, 5})};
  EXPECT_EQ(parallelepiped_points(rays, 2).size(), 5u);
  std::vector<IntVec> r3{iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})};
  EXPECT_EQ(multiplicity(r3, 3), 2);
  EXPECT_EQ(parallelepiped_points(r3, 3).size(), 2u);
}

TEST(Fan, StellarSubdivisionOfQuadricCone) {
  auto f = stellar_subdivide(catalog_fan("quadric-cone"), iv({1, 1}));
  EXPECT_EQ(f.ray_count(), 3u);
  EXPECT_EQ(f.cones().size(), 2u);
  EXPECT_TRUE(is_smooth(f));
}

TEST(Fan, StellarSubdivisionOfP2IsF1) {
  auto f = stellar_subdivide(catalog_fan("p2"), iv({1, 1}));
  EXPECT_TRUE(is_complete(f));
  EXPECT_TRUE(is_smooth(f));
  EXPECT_EQ(f.cones().size(), 4u);
}

TEST(Resolve, A4ConeNeedsFourRays) {
  auto r = resolve(fan(2, {{1, 0}, {1, 5}}, {{0, 1}}));
  EXPECT_TRUE(is_smooth(r.fan));
  std::set<IntVec> got(r.new_rays.begin(), r.new_rays.end());
  EXPECT_EQ(got, (std::set<IntVec>{iv({1, 1}), iv({1, 2}), iv({1, 3}), iv({1, 4})}));
}

TEST(Resolve, SmoothFanIsFixed) {
  auto f = catalog_fan("dp6");
  auto r = resolve(f);
  EXPECT_TRUE(r.new_rays.empty());
  EXPECT_EQ(r.fan.rays(), f.rays());
  auto again = resolve(resolve(catalog_fan("quadric-cone")).fan);
  EXPECT_TRUE(again.new_rays.empty());
}

TEST(Resolve, BothOrdersGiveSmoothFansOnRandomCones) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> c(-4, 4);
  int done = 0;
  while (done < 30) {
    std::vector<IntVec> rays;
    for (int i = 0; i < 3; ++i) rays.push_back(iv({c(rng), c(rng), c(rng)}));
    try {
      auto f = Fan(3, rays, {{0, 1, 2}}, true);
      if (multiplicity(rays, 3) == 0 || multiplicity(rays, 3) > 40) continue;
      for (auto order : {ResolveOrder::kLowestMultiplicityFirst, ResolveOrder::kHighestMultiplicityFirst}) {
        auto r = resolve(f, order);
        EXPECT_TRUE(is_smooth(r.fan));
        for (const auto& v : r.new_rays) EXPECT_TRUE(f.in_support(to_rational(v)));
      }
      ++done;
    } catch (const InputRejected&) {
    }
  }
}

TEST(NormalFanOfPolytope, HexagonGivesDp6) {
  auto p = RationalPolytope::from_vertices(2, {rv({1, 0}), rv({1, 1}), rv({0, 1}), rv({-1, 0}), rv({-1, -1}), rv({0, -1})});
  auto f = normal_fan(p);
  EXPECT_EQ(f.ray_count(), 6u);
  EXPECT_TRUE(is_smooth(f));
  EXPECT_TRUE(is_complete(f));
}
