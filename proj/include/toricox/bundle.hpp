#pragma once

// P^1-bundles Y = P(O + O(L)) over a toric variety X as fans in N x Z.
// Ray v_i of X lifts to (v_i, -l_i) where L = sum l_i D_i; the sections are
// E0 = (0,...,0,1) and Einf = (0,...,0,-1). With this sign, the character
// (0,...,0,1) has divisor E0 - Einf - pi^*L, so E0 ~ pi^*L + Einf.

#include "cox.hpp"

namespace toricox {

struct BundleData {
  ToricVariety Y;
  ToricVariety base;
  TorusDivisor L;
  std::size_t e0_ray = 0;
  std::size_t einf_ray = 0;
  IntMatrix projection; // N x Z -> N
};

inline BundleData projectivize(const ToricVariety& x, const TorusDivisor& L) {
  if (L.size() != x.ray_count()) throw InputRejected("projectivize: L has wrong length");
  if (!is_cartier(x, L)) throw InputRejected("projectivize: L is not Cartier");
  const std::size_t n = x.dimension(), d = x.ray_count();
  auto l = L.integral();
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec r = x.fan().rays()[i];
    r.push_back(-l[i]);
    rays.push_back(std::move(r));
  }
  IntVec e0(n + 1, Integer(0)), einf(n + 1, Integer(0));
  e0[n] = 1;
  einf[n] = -1;
  rays.push_back(e0);
  rays.push_back(einf);
  std::vector<RayIndices> cones;
  for (const auto& c : x.fan().cones()) {
    auto a = c, b = c;
    a.push_back(d);
    b.push_back(d + 1);
    cones.push_back(a);
    cones.push_back(b);
  }
  BundleData bd;
  bd.Y = x.complete() ? ToricVariety::make(Fan(n + 1, rays, cones), true) : ToricVariety::local(Fan(n + 1, rays, cones));
  bd.base = x;
  bd.L = L;
  bd.e0_ray = d;
  bd.einf_ray = d + 1;
  bd.projection = IntMatrix(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) bd.projection(i, i) = 1;
  return bd;
}

/// pi^*D through support functions: the coefficient on a ray w of Y is
/// minus the support function of D at pi(w).
inline TorusDivisor pullback(const BundleData& b, const TorusDivisor& D) {
  const auto& fx = b.base.fan();
  auto sf = support_function(b.base, D);
  TorusDivisor out = TorusDivisor::zero(b.Y.ray_count());
  for (std::size_t k = 0; k < b.Y.ray_count(); ++k) {
    IntVec p = b.projection * b.Y.fan().rays()[k];
    if (is_zero(p)) continue;
    auto hits = fx.cones_containing(to_rational(p));
    if (hits.empty()) throw Error("pullback: projected ray leaves the base support");
    const auto& m = sf[hits.front()];
    if (!m) throw InputRejected("pullback: divisor is not Q-Cartier");
    out[k] = -dot(*m, p);
  }
  return out;
}

inline TorusDivisor ray_divisor(std::size_t count, std::size_t i) {
  TorusDivisor d = TorusDivisor::zero(count);
  d[i] = 1;
  return d;
}

/// K_Y = pi^*K_X - E0 - Einf, exactly (torsion included).
inline bool check_adjunction(const BundleData& b) {
  const auto& y = b.Y;
  const std::size_t r = y.ray_count();
  if (b.e0_ray >= r || b.einf_ray >= r) return false;
  auto diff = canonical_divisor(y) - (pullback(b, canonical_divisor(b.base)) - ray_divisor(r, b.e0_ray) - ray_divisor(r, b.einf_ray));
  if (!diff.is_integral()) return false;
  return y.linearly_equivalent(diff.integral(), IntVec(r, Integer(0)));
}

/// E0 ~ pi^*L + Einf, exactly (the difference is the divisor of a character).
inline bool boundary_relation(const BundleData& b) {
  const auto& y = b.Y;
  const std::size_t r = y.ray_count();
  if (b.e0_ray >= r || b.einf_ray >= r) return false;
  auto diff = ray_divisor(r, b.e0_ray) - pullback(b, b.L) - ray_divisor(r, b.einf_ray);
  if (!diff.is_integral()) return false;
  return y.linearly_equivalent(diff.integral(), IntVec(r, Integer(0)));
}

struct PullbackBasis {
  IntMatrix G;    // pullback-basis coordinates = G * (Y's Hermite coordinates)
  bool unimodular = false;
  bool consistent = false; // G reproduces the pullback-basis class of every ray
};

/// Expresses Cl(Y) in the basis (pi^*B_1, ..., pi^*B_r, Einf), B_j the
/// Hermite basis of Cl(X). The map is forced on rays: a lifted ray goes to
/// the class of its base ray, E0 to (class L, 1), Einf to (0, 1).
inline PullbackBasis pullback_basis(const BundleData& b) {
  const auto& x = b.base;
  const auto& y = b.Y;
  const std::size_t r = x.class_rank();
  const std::size_t ry = y.class_rank();
  auto lclass = x.rational_class(b.L);
  auto target = [&](std::size_t k) {
    IntVec c(r + 1, Integer(0));
    if (k == b.e0_ray) {
      for (std::size_t i = 0; i < r; ++i) c[i] = Integer(lclass[i]);
      c[r] = 1;
    } else if (k == b.einf_ray) {
      c[r] = 1;
    } else {
      auto p = b.projection * y.fan().rays()[k];
      auto i = x.fan().ray_index(p);
      if (!i) throw Error("pullback_basis: lifted ray does not project to a base ray");
      auto cl = x.ray_class(*i).degree;
      for (std::size_t j = 0; j < r; ++j) c[j] = cl[j];
    }
    return c;
  };
  PullbackBasis pb;
  pb.G = IntMatrix(r + 1, ry);
  for (std::size_t col = 0; col < ry; ++col) {
    RatVec e(ry, Rational(0));
    e[col] = 1;
    auto rep = y.representative(e).integral();
    IntVec img(r + 1, Integer(0));
    for (std::size_t k = 0; k < rep.size(); ++k)
      if (rep[k] != 0) img = img + scaled(rep[k], target(k));
    for (std::size_t i = 0; i <= r; ++i) pb.G(i, col) = img[i];
  }
  pb.consistent = true;
  for (std::size_t k = 0; k < y.ray_count(); ++k)
    if (pb.G * y.ray_class(k).degree != target(k)) pb.consistent = false;
  pb.unimodular = ry == r + 1 && abs(determinant(pb.G)) == 1;
  return pb;
}

/// Cox(Y) graded in the pullback basis, derived from Y's own class group.
inline GradedRing cox_ring_pullback_basis(const BundleData& b) {
  auto pb = pullback_basis(b);
  if (!pb.unimodular || !pb.consistent) throw Error("cox_ring_pullback_basis: pullback classes are not a basis of Cl(Y)");
  return cox_ring(b.Y).regraded(pb.G);
}

} // namespace toricox
