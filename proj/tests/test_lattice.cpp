#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricox;
using namespace toricox::testing;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> rs;
  for (const auto& r : rows) rs.push_back(int_vec(r));
  return IntMatrix::from_rows(rs);
}

void expect_smith(const IntMatrix& m) {
  auto snf = smith_form(m);
  EXPECT_EQ(snf.U * m * snf.V, snf.S);
  EXPECT_EQ(abs(determinant(snf.U)), 1);
  EXPECT_EQ(abs(determinant(snf.V)), 1);
  const std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) { EXPECT_EQ(snf.S(i, j), 0); }
  for (std::size_t i = 0; i < k; ++i) EXPECT_GE(snf.S(i, i), 0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (snf.S(i, i) == 0) EXPECT_EQ(snf.S(i + 1, i + 1), 0);
    else EXPECT_EQ(snf.S(i + 1, i + 1) % snf.S(i, i), 0);
  }
}

// Naive scan of the bounding box against the halfspaces.
std::size_t brute_force_count(const RationalPolytope& p, long box) {
  std::size_t n = 0;
  const std::size_t r = p.ambient_rank();
  std::vector<long> x(r, -box);
  while (true) {
    if (p.contains(RatVec(x.begin(), x.end()))) ++n;
    std::size_t i = 0;
    while (i < r && x[i] == box) x[i++] = -box;
    if (i == r) break;
    ++x[i];
  }
  return n;
}

} // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(make_rational(-2, 4)), "-1/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), InputRejected);
  EXPECT_THROW(parse_rational("x"), InputRejected);
  EXPECT_EQ(parse_rational_list("1, -2/3,4"), (RatVec{Rational(1), Rational(-2, 3), Rational(4)}));
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_of(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(-1, 2)), 0);
  EXPECT_EQ(floor_of(Rational(7, 3)), 2);
  EXPECT_EQ(ceil_of(Rational(7, 3)), 3);
  EXPECT_EQ(floor_of(Rational(4)), 4);
}

TEST(SmithForm, Identity) {
  auto snf = smith_form(IntMatrix::identity(2));
  EXPECT_EQ(snf.S, IntMatrix::identity(2));
}

TEST(SmithForm, DiagonalTwoThree) {
  auto snf = smith_form(mat({{2, 0}, {0, 3}}));
  EXPECT_EQ(snf.S, mat({{1, 0}, {0, 6}}));
  expect_smith(mat({{2, 0}, {0, 3}}));
}

TEST(SmithForm, RowVector) {
  auto snf = smith_form(mat({{2, 4}}));
  EXPECT_EQ(snf.S, mat({{2, 0}}));
}

TEST(SmithForm, RandomSmallMatrices) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    expect_smith(m);
  }
}

TEST(HermiteForm, EchelonAndUnimodular) {
  auto m = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto h = hermite_form(m);
  EXPECT_EQ(h.W * m, h.H);
  EXPECT_EQ(abs(determinant(h.W)), 1);
  // row lattice of m has index |det| = 144 in Z^3
  EXPECT_EQ(abs(determinant(h.H)), 144);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_GT(h.H(i, i), 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      EXPECT_GE(h.H(k, i), 0);
      EXPECT_LT(h.H(k, i), h.H(i, i));
    }
}

TEST(IntegerSolve, SolvableAndNot) {
  auto a = mat({{2, 0}, {0, 3}});
  EXPECT_TRUE(integer_solve(a, iv({4, 9})).has_value());
  EXPECT_FALSE(integer_solve(a, iv({1, 0})).has_value());
  auto x = integer_solve(mat({{1, 2, 3}}), iv({7}));
  ASSERT_TRUE(x);
  EXPECT_EQ(mat({{1, 2, 3}}) * *x, iv({7}));
}

TEST(LatticeKernel, SaturatedBasis) {
  // kernel of (2 4) is spanned by (-2, 1), not by a multiple of it
  auto k = lattice_kernel(mat({{2, 4}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(is_primitive(k[0]));
  EXPECT_EQ(2 * k[0][0] + 4 * k[0][1], 0);
}

TEST(CompleteToBasis, FirstRowIsInput) {
  for (auto v : {iv({2, 3}), iv({-1, 1}), iv({3, 5, 7}), iv({0, 0, 1})}) {
    auto b = complete_to_basis(v);
    EXPECT_EQ(b.row(0), v);
    EXPECT_EQ(abs(determinant(b)), 1);
  }
  EXPECT_THROW(complete_to_basis(iv({2, 4})), InputRejected);
}

TEST(Inverse, EmptyAndSingular) {
  EXPECT_TRUE(inverse(RatMatrix(0, 0)).has_value());
  EXPECT_FALSE(inverse(to_rational(mat({{1, 2}, {2, 4}}))).has_value());
}

TEST(Cone, QuadrantMembershipAndDual) {
  RationalCone q(2, {iv({1, 0}), iv({0, 1})});
  EXPECT_TRUE(cone_contains(q, rv({1, 1})));
  EXPECT_FALSE(cone_contains(q, rv({-1, 1})));
  auto d = dual_cone(q);
  std::set<IntVec> rays(d.rays.begin(), d.rays.end());
  EXPECT_EQ(rays, (std::set<IntVec>{iv({1, 0}), iv({0, 1})}));
}

TEST(Cone, HalfspaceOracle) {
  RationalCone c(2, {iv({1, 0}), iv({1, 2})});
  EXPECT_TRUE(cone_contains(c, rv({1, 1})));
  EXPECT_FALSE(cone_contains(c, rv({0, -1})));
  // the facets are y >= 0 and 2x - y >= 0
  auto d = dual_cone(c);
  std::set<IntVec> rays(d.rays.begin(), d.rays.end());
  EXPECT_EQ(rays, (std::set<IntVec>{iv({0, 1}), iv({2, -1})}));
}

TEST(Cone, StrongConvexity) {
  EXPECT_TRUE(is_strongly_convex(RationalCone(2, {iv({1, 0}), iv({0, 1})})));
  EXPECT_FALSE(is_strongly_convex(RationalCone(2, {iv({1, 0}), iv({-1, 0})})));
}

TEST(LatticePoints, UnitSquare) {
  auto p = RationalPolytope::from_vertices(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  EXPECT_EQ(lattice_points(p).size(), 4u);
}

TEST(LatticePoints, CubicTriangle) {
  auto p = RationalPolytope::from_vertices(2, {rv({-1, -1}), rv({2, -1}), rv({-1, 2})});
  auto pts = lattice_points(p);
  EXPECT_EQ(pts.size(), 10u);
  EXPECT_EQ(pts.size(), brute_force_count(p, 3));
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(LatticePoints, Empty) {
  auto p = RationalPolytope::from_halfspaces(2, {{iv({1, 0}), Rational(-1)}, {iv({-1, 0}), Rational(0)}, {iv({0, 1}), Rational(0)},
                                                 {iv({0, -1}), Rational(1)}});
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(lattice_points(p).size(), 0u);
}

TEST(LatticePoints, UnboundedRejectedWithWitness) {
  try {
    RationalPolytope::from_halfspaces(2, {{iv({1, 0}), Rational(0)}, {iv({0, 1}), Rational(0)}});
    FAIL() << "unbounded polytope accepted";
  } catch (const Unbounded& e) {
    ASSERT_EQ(e.witness().size(), 2u);
    EXPECT_GE(e.witness()[0], 0);
    EXPECT_GE(e.witness()[1], 0);
    EXPECT_GT(std::abs(e.witness()[0]) + std::abs(e.witness()[1]), 0);
  }
}

TEST(LatticePoints, AgreesWithBruteForceOnRandomPolytopes) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coord(-4, 4), den(1, 3), count(3, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rank = trial % 2 ? 3 : 2;
    std::vector<RatVec> pts;
    for (long i = 0, n = count(rng); i < n; ++i) {
      RatVec v;
      for (std::size_t j = 0; j < rank; ++j) v.push_back(make_rational(coord(rng), den(rng)));
      pts.push_back(v);
    }
    auto p = RationalPolytope::from_vertices(rank, pts);
    EXPECT_EQ(lattice_points(p).size(), brute_force_count(p, 5));
  }
}

TEST(LatticePoints, UnimodularInvariance) {
  auto p = RationalPolytope::from_vertices(2, {rv({0, 0}), rv({3, 1}), rv({1, 2}), rv({2, -1})});
  IntMatrix g = mat({{2, 1}, {1, 1}});
  std::vector<RatVec> moved;
  for (const auto& v : p.vertices()) moved.push_back(to_rational(g) * v);
  EXPECT_EQ(lattice_points(p).size(), lattice_points(RationalPolytope::from_vertices(2, moved)).size());
}

TEST(NormalFan, Segment) {
  auto f = normal_fan(RationalPolytope::from_vertices(1, {rv({0}), rv({1})}));
  std::set<IntVec> rays(f.rays().begin(), f.rays().end());
  EXPECT_EQ(rays, (std::set<IntVec>{iv({1}), iv({-1})}));
  EXPECT_TRUE(is_complete(f));
}

TEST(NormalFan, SquareIsProductOfLines) {
  auto f = normal_fan(RationalPolytope::from_vertices(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}));
  EXPECT_EQ(f.ray_count(), 4u);
  EXPECT_EQ(f.cones().size(), 4u);
  EXPECT_TRUE(is_complete(f) && is_smooth(f));
}

TEST(NormalFan, SimplexIsProjectivePlane) {
  auto f = normal_fan(RationalPolytope::from_vertices(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})}));
  std::set<IntVec> rays(f.rays().begin(), f.rays().end());
  EXPECT_EQ(rays, (std::set<IntVec>{iv({1, 0}), iv({0, 1}), iv({-1, -1})}));
  EXPECT_EQ(f.cones().size(), 3u);
}

TEST(NormalFan, RejectsLowerDimensional) {
  auto p = RationalPolytope::from_vertices(2, {rv({0, 0}), rv({1, 1})});
  EXPECT_THROW(normal_fan(p), InputRejected);
}

TEST(NormalFan, CompleteForRandomPolytopes) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> coord(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<RatVec> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(RatVec{Rational(coord(rng)), Rational(coord(rng)), Rational(coord(rng))});
    auto p = RationalPolytope::from_vertices(3, pts);
    if (p.dimension() != 3) continue;
    auto f = normal_fan(p);
    EXPECT_TRUE(is_complete(f));
    EXPECT_EQ(f.cones().size(), p.vertices().size());
    ++checked;
  }
  EXPECT_GT(checked, 30);
}
