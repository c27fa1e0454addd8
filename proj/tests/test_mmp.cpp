#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace toricox;
using namespace toricox::testing;

namespace {

IntVec class_of(const ToricVariety& x, const TorusDivisor& d) { return x.class_of(d).degree; }

// F1 rays (1,0),(1,1),(0,1),(-1,-1): D1 = E, D3 = H.
const TorusDivisor kF1_2E_minus_H = div({0, 2, 0, -1});

} // namespace

TEST(Chamber, EffectiveThresholdsOnF1) {
  // -K + t(2E - H) = (3 - t)H + (2t - 1)E; effective iff both 3 - t and
  // 2 + t are >= 0 in the (H - E, E) decomposition
  auto x = make_variety(catalog_fan("f1"));
  auto A = -canonical_divisor(x);
  EXPECT_EQ(*effective_threshold(x, A.coefficients, kF1_2E_minus_H.coefficients), 3);
  EXPECT_EQ(*effective_threshold(x, A.coefficients, (-kF1_2E_minus_H).coefficients), 2);
}

TEST(Chamber, ScanFindsNefBoundaryOfF1) {
  // ample while the E coefficient 1 - 2t stays positive: the wall is t = 1/2
  auto x = make_variety(catalog_fan("f1"));
  auto A = -canonical_divisor(x);
  auto plus = scan_segment(x, A.coefficients, kF1_2E_minus_H.coefficients);
  EXPECT_TRUE(plus.transverse);
  EXPECT_EQ(plus.exit, 3);
  ASSERT_EQ(plus.walls.size(), 1u);
  EXPECT_EQ(plus.walls[0].t, q(1, 2));
  auto minus = scan_segment(x, A.coefficients, (-kF1_2E_minus_H).coefficients);
  EXPECT_TRUE(minus.transverse);
  EXPECT_EQ(minus.exit, 2);
  EXPECT_TRUE(minus.walls.empty());
}

TEST(Mmp, QuadricThresholdsAreOne) {
  auto x = make_variety(catalog_fan("p1xp1"));
  auto b = projectivize(x, div({1, 0, -1, 0}));
  auto [ap, am] = boundary_effective_thresholds(b, div({1, 0, 1, 0}));
  EXPECT_EQ(ap, 1);
  EXPECT_EQ(am, 1);
}

TEST(Mmp, LAdmissibility) {
  auto p = catalog("p1xp1");
  auto& x = p.variety;
  auto A = reference_ample(p, Mode::kFano);
  EXPECT_EQ(l_rejection(x, A, class_of(x, div({1, 0, -1, 0}))), "");
  EXPECT_EQ(l_rejection(x, A, class_of(x, div({1, 0, 0, 0}))), "L is effective");
  EXPECT_EQ(l_rejection(x, A, class_of(x, div({-1, 0, 0, 0}))), "-L is effective");
  EXPECT_EQ(l_rejection(x, A, class_of(x, div({0, 0, 0, 0}))), "L is zero");
  EXPECT_THROW(choose_L(p, Mode::kFano, iv({1})), InputRejected);
}

TEST(Mmp, SelectedLIsAdmissible) {
  for (const char* name : {"p1xp1", "f1", "dp7", "dp6"}) {
    auto p = catalog(name);
    auto ch = select_L(p, Mode::kFano);
    auto A = reference_ample(p, Mode::kFano);
    EXPECT_EQ(l_rejection(p.variety, A, ch.cls), "") << name;
    EXPECT_EQ(p.variety.class_of(ch.L).degree, ch.cls) << name;
  }
  EXPECT_THROW(select_L(catalog("p2"), Mode::kFano), InputRejected);
}

TEST(Mmp, QuadricReducesToProjectiveSpace) {
  auto p = catalog("p1xp1");
  StepOptions so;
  so.L = class_of(p.variety, div({1, 0, -1, 0}));
  auto s = reduction_step(p, Mode::kFano, so);
  for (const auto& c : s.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  const auto& f = s.contraction.fan;
  ASSERT_EQ(f.ray_count(), 4u);
  ASSERT_EQ(f.ambient_rank(), 3u);
  IntVec sum(3, Integer(0));
  for (const auto& r : f.rays()) sum = sum + r;
  EXPECT_TRUE(is_zero(sum));
  for (const auto& c : f.cones()) EXPECT_EQ(abs(determinant(IntMatrix::from_rows(f.ray_vectors(c)))), 1);
}

TEST(Mmp, F1WalkFlipsThenContracts) {
  auto p = catalog("f1");
  StepOptions so;
  so.L = class_of(p.variety, kF1_2E_minus_H);
  auto s = reduction_step(p, Mode::kFano, so);
  for (const auto& c : s.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  const auto& cr = s.walk.crossings;
  ASSERT_GE(cr.size(), 3u);
  EXPECT_EQ(cr.front().kind, WallCrossing::kFlip);
  for (std::size_t i = 1; i < cr.size(); ++i) EXPECT_EQ(cr[i].kind, WallCrossing::kDivisorial) << i;
  const auto& xp = s.xprime();
  EXPECT_EQ(xp.variety.class_rank(), 1u);
  EXPECT_TRUE(at_least(classify(xp).classification, Singularity::kKlt));
  EXPECT_TRUE(is_ample(xp.variety, -canonical_divisor(xp.variety)));
}

TEST(Mmp, ContractionNeedsLargeB) {
  auto x = make_variety(catalog_fan("p1xp1"));
  auto A = div({1, 0, 1, 0});
  auto b = projectivize(x, div({1, 0, -1, 0}));
  EXPECT_THROW(contract_boundary(b, A, TorusDivisor::zero(4), Rational(1)), InputRejected);
  EXPECT_NO_THROW(contract_boundary(b, A, TorusDivisor::zero(4), q(3, 2)));
}

TEST(Mmp, CorruptedBoundaryIsNotKlt) {
  auto p = catalog("f1");
  auto s = reduction_step(p, Mode::kFano);
  ASSERT_TRUE(s.certified());
  auto xp = s.xprime();
  auto d = xp.boundary;
  d[0] = 1;
  auto bad = LogPair(xp.variety, d);
  EXPECT_FALSE(at_least(classify(bad).classification, Singularity::kKlt));
}

TEST(Mmp, CyclicCoverOfQuadric) {
  auto p = catalog("p1xp1");
  StepOptions so;
  so.L = class_of(p.variety, div({1, 0, -1, 0}));
  auto s = reduction_step(p, Mode::kFano, so);
  auto cc = cyclic_cover_check(p.variety, s.L.cls, s.xprime().variety, s.contraction.origin, 4);
  EXPECT_TRUE(cc.basis_ok);
  EXPECT_TRUE(cc.tables_equal);
  EXPECT_TRUE(cc.graded_checked);
  EXPECT_GT(cc.degrees_checked, 0u);
}

TEST(Mmp, CalabiYauStepKeepsBoundaryTrivial) {
  auto p = with_full_boundary(catalog("p1xp1"));
  auto s = reduction_step(p, Mode::kCalabiYau);
  for (const auto& c : s.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(is_log_cy(s.xprime()));
}
