#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace toricox;
using namespace toricox::testing;

TEST(Catalog, EntriesBuild) {
  for (const auto& e : catalog_entries()) {
    auto p = catalog(e.name);
    EXPECT_EQ(p.variety.dimension(), e.rank) << e.name;
    EXPECT_EQ(p.variety.complete(), e.complete) << e.name;
  }
  EXPECT_THROW(catalog("p7"), InputRejected);
  EXPECT_THROW(catalog_fan(""), InputRejected);
}

TEST(Reduce, F1InOneStep) {
  auto chain = reduce(catalog("f1"), Mode::kFano);
  EXPECT_TRUE(chain.certified());
  EXPECT_EQ(chain.steps.size(), 1u);
  EXPECT_EQ(chain.terminal.variety.class_rank(), 1u);
  ASSERT_TRUE(chain.terminal_cone);
  EXPECT_GT(chain.terminal_cone->report.m, 0);
}

TEST(Reduce, QuadricWithForcedL) {
  auto p = catalog("p1xp1");
  ReduceOptions opt;
  opt.first_L = p.variety.class_of(div({1, 0, -1, 0})).degree;
  auto chain = reduce(p, Mode::kFano, opt);
  EXPECT_TRUE(chain.certified());
  ASSERT_TRUE(chain.terminal_cone);
  // P^3 with its hyperplane class: -K = 4H
  EXPECT_EQ(chain.terminal_cone->report.m, 4);
  EXPECT_EQ(chain.terminal_cone->report.discrepancy_of_E, 3);
}

TEST(Reduce, RankOneNeedsNoSteps) {
  // P2 with two lines at 2/3: -(K + D) = (5/3) H
  auto x = make_variety(catalog_fan("p2"));
  LogPair p(x, TorusDivisor(RatVec{q(2, 3), q(2, 3), 0}));
  auto chain = reduce(p, Mode::kFano);
  EXPECT_TRUE(chain.steps.empty());
  EXPECT_TRUE(chain.certified());
  ASSERT_TRUE(chain.terminal_cone);
  EXPECT_EQ(chain.terminal_cone->report.m, q(5, 3));
}

TEST(Reduce, DelPezzoChains) {
  EXPECT_EQ(reduce(catalog("dp7"), Mode::kFano).steps.size(), 2u);
  auto cy = reduce(with_full_boundary(catalog("dp7")), Mode::kCalabiYau);
  EXPECT_TRUE(cy.certified());
  EXPECT_EQ(cy.terminal_cone->report.m, 0);
}

TEST(Reduce, RejectsWrongMode) {
  EXPECT_THROW(reduce(catalog("f2"), Mode::kFano), InputRejected);                     // -K not ample
  EXPECT_THROW(reduce(catalog("p2"), Mode::kCalabiYau), InputRejected);                // K not trivial
  EXPECT_THROW(reduce(with_full_boundary(catalog("p2")), Mode::kFano), InputRejected);  // not klt
  EXPECT_THROW(reduce(catalog("quadric-cone"), Mode::kFano), InputRejected);           // not complete
}

TEST(Theorem, CalabiYauPlane) {
  auto r = verify_theorem(with_full_boundary(catalog("p2")), Mode::kCalabiYau);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.chain.terminal_cone->report.m, 0);
}

TEST(Theorem, SmoothFanoGetsGorensteinCheck) {
  auto r = verify_theorem(catalog("f1"), Mode::kFano);
  EXPECT_TRUE(r.passed());
  bool seen = false;
  for (const auto& c : r.checks) seen = seen || c.name == "gorenstein_canonical";
  EXPECT_TRUE(seen);
}

TEST(Theorem, ClassGenerator) {
  auto x = make_variety(catalog_fan("p3"));
  auto g = class_generator(x);
  EXPECT_EQ(x.rational_class(g), (RatVec{Rational(1)}));
  EXPECT_THROW(class_generator(make_variety(catalog_fan("f1"))), InputRejected);
}

TEST(Reduce, CoverIdentityOnEveryCatalogChainAtRadiusFour) {
  ReduceOptions opt;
  opt.cover_radius = 4;
  for (const char* name : {"p1xp1", "f1", "dp7", "dp6"})
    for (auto mode : {Mode::kFano, Mode::kCalabiYau}) {
      auto p = mode == Mode::kFano ? catalog(name) : with_full_boundary(catalog(name));
      auto chain = reduce(p, mode, opt);
      EXPECT_TRUE(chain.certified()) << name << " " << to_string(mode);
      for (const auto& s : chain.steps)
        for (const auto& c : s.checks)
          if (c.name == "cyclic_cover") { EXPECT_TRUE(c.passed) << name << ": " << c.detail; }
    }
}
