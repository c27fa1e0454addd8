#pragma once

// Rational polyhedral cones given by generators: facets, duals, membership.
// Everything is brute force over generator subsets, which is exact and more
// than fast enough for the ranks that occur here (at most six or so).

#include "matrix.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace toricox {

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when f returns false.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct RationalCone {
  std::size_t ambient_rank = 0;
  std::vector<IntVec> rays; // primitive generators

  RationalCone() = default;
  RationalCone(std::size_t rank, std::vector<IntVec> gens) : ambient_rank(rank) {
    std::set<IntVec> seen;
    for (auto& g : gens) {
      if (g.size() != rank) throw InputRejected("cone generator has wrong length");
      if (is_zero(g)) continue;
      auto p = primitive_of(g);
      if (seen.insert(p).second) rays.push_back(std::move(p));
    }
  }
};

/// A facet of a cone relative to the linear span of its generators.
struct ConeFacet {
  IntVec normal;                     // primitive, >= 0 on the cone, inside span
  std::vector<std::size_t> on_facet; // generator indices with normal . g == 0
};

/// Basis of the orthogonal complement of span(gens) in Q^dim.
inline std::vector<IntVec> orthogonal_complement(const std::vector<IntVec>& gens, std::size_t dim) {
  if (gens.empty()) {
    std::vector<IntVec> basis;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVec e(dim, Integer(0));
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  RatMatrix m(gens.size(), dim);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = gens[i][j];
  return integer_kernel(m);
}

/// Facets of cone(gens) relative to span(gens).
inline std::vector<ConeFacet> cone_facets(const std::vector<IntVec>& gens, std::size_t dim) {
  const std::size_t k = rank_of(gens, dim);
  std::vector<ConeFacet> out;
  if (k == 0) return out;
  const auto perp = orthogonal_complement(gens, dim);
  std::set<IntVec> seen;
  for_each_subset(gens.size(), k - 1, [&](const std::vector<std::size_t>& sub) {
    RatMatrix m(sub.size() + perp.size(), dim);
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = gens[sub[i]][j];
    for (std::size_t i = 0; i < perp.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(sub.size() + i, j) = perp[i][j];
    auto ker = integer_kernel(m);
    if (ker.size() != 1) return true;
    IntVec u = ker.front();
    int sign = 0;
    for (const auto& g : gens) {
      int s = sgn(dot(u, g));
      if (s == 0) continue;
      if (sign == 0) sign = s;
      else if (s != sign) return true;
    }
    if (sign == 0) return true;
    if (sign < 0) u = -u;
    if (!seen.insert(u).second) return true;
    ConeFacet f{u, {}};
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dot(u, gens[i]) == 0) f.on_facet.push_back(i);
    out.push_back(std::move(f));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ConeFacet& a, const ConeFacet& b) { return a.normal < b.normal; });
  return out;
}

/// Dual cone {u : u . x >= 0 on C}, generated by the primitive facet
/// normals together with +- a basis of span(C)^perp.
inline RationalCone dual_cone(const RationalCone& c) {
  std::vector<IntVec> gens;
  for (auto& f : cone_facets(c.rays, c.ambient_rank)) gens.push_back(f.normal);
  for (auto& p : orthogonal_complement(c.rays, c.ambient_rank)) {
    gens.push_back(p);
    gens.push_back(-p);
  }
  return RationalCone(c.ambient_rank, std::move(gens));
}

inline bool cone_contains(const RationalCone& c, const RatVec& v) {
  if (v.size() != c.ambient_rank) throw InputRejected("cone_contains: vector has wrong length");
  for (const auto& p : orthogonal_complement(c.rays, c.ambient_rank))
    if (dot(p, v) != 0) return false;
  for (const auto& f : cone_facets(c.rays, c.ambient_rank))
    if (dot(f.normal, v) < 0) return false;
  return true;
}

inline bool cone_contains(const RationalCone& c, const IntVec& v) { return cone_contains(c, to_rational(v)); }

/// Dimension of the largest linear subspace contained in the cone.
inline std::size_t lineality_dimension(const RationalCone& c) {
  auto d = dual_cone(c);
  return c.ambient_rank - rank_of(d.rays, c.ambient_rank);
}

inline bool is_strongly_convex(const RationalCone& c) { return lineality_dimension(c) == 0; }

/// Indices (into gens) of the smallest face of cone(gens) containing all of
/// `subset`.
inline std::vector<std::size_t> face_closure(const std::vector<IntVec>& gens, std::size_t dim,
                                             const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> face(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) face[i] = i;
  for (const auto& f : cone_facets(gens, dim)) {
    bool contains = std::all_of(subset.begin(), subset.end(), [&](std::size_t i) {
      return std::binary_search(f.on_facet.begin(), f.on_facet.end(), i);
    });
    if (!contains) continue;
    std::vector<std::size_t> next;
    std::set_intersection(face.begin(), face.end(), f.on_facet.begin(), f.on_facet.end(), std::back_inserter(next));
    face = std::move(next);
  }
  return face;
}

} // namespace toricox
