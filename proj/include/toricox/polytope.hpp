#pragma once

// Rational polytopes in double description (halfspaces + vertices) and
// lattice point enumeration.

#include "cone.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricox {

/// normal . x + offset >= 0
struct Halfspace {
  IntVec normal;
  Rational offset;
  bool operator==(const Halfspace&) const = default;
};

class RationalPolytope {
public:
  /// Intersection of halfspaces. Throws Unbounded (with a recession
  /// direction) when the set is nonempty and unbounded.
  static RationalPolytope from_halfspaces(std::size_t rank, std::vector<Halfspace> hs) {
    RationalPolytope p;
    p.rank_ = rank;
    std::vector<IntVec> gens;
    for (const auto& h : hs) {
      if (h.normal.size() != rank) throw InputRejected("halfspace normal has wrong length");
      RatVec g(rank + 1);
      for (std::size_t i = 0; i < rank; ++i) g[i] = h.normal[i];
      g[rank] = h.offset;
      if (is_zero(g)) continue;
      gens.push_back(primitive_of(g));
    }
    IntVec t_axis(rank + 1, Integer(0));
    t_axis[rank] = 1;
    gens.push_back(t_axis);
    auto hom = dual_cone(RationalCone(rank + 1, gens));
    std::optional<IntVec> recession;
    for (const auto& g : hom.rays) {
      if (g[rank] > 0) {
        RatVec v(rank);
        for (std::size_t i = 0; i < rank; ++i) v[i] = make_rational(g[i], g[rank]);
        p.vertices_.push_back(std::move(v));
      } else if (!recession) {
        recession = IntVec(g.begin(), g.begin() + rank);
      }
    }
    if (!p.vertices_.empty() && recession) {
      std::vector<long> w;
      for (const auto& x : *recession) w.push_back(to_long(x));
      throw Unbounded("polytope is unbounded along " + vec_to_string(*recession), w);
    }
    std::sort(p.vertices_.begin(), p.vertices_.end());
    p.halfspaces_ = std::move(hs);
    return p;
  }

  /// Convex hull of finitely many points.
  static RationalPolytope from_vertices(std::size_t rank, std::vector<RatVec> pts) {
    RationalPolytope p;
    p.rank_ = rank;
    if (pts.empty()) return p;
    std::vector<IntVec> gens;
    for (const auto& v : pts) {
      if (v.size() != rank) throw InputRejected("vertex has wrong length");
      RatVec g(v);
      g.push_back(1);
      gens.push_back(primitive_of(g));
    }
    RationalCone c(rank + 1, gens);
    for (const auto& f : cone_facets(c.rays, rank + 1)) p.halfspaces_.push_back(split(f.normal, rank));
    for (const auto& q : orthogonal_complement(c.rays, rank + 1)) {
      p.halfspaces_.push_back(split(q, rank));
      p.halfspaces_.push_back(split(-q, rank));
    }
    // keep only the extreme points
    for (const auto& v : pts) {
      RatVec g(v);
      g.push_back(1);
      auto pv = primitive_of(g);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < c.rays.size(); ++i)
        if (c.rays[i] == pv) idx.push_back(i);
      if (idx.empty()) continue;
      if (face_closure(c.rays, rank + 1, idx).size() == 1) p.vertices_.push_back(v);
    }
    std::sort(p.vertices_.begin(), p.vertices_.end());
    p.vertices_.erase(std::unique(p.vertices_.begin(), p.vertices_.end()), p.vertices_.end());
    return p;
  }

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  bool empty() const { return vertices_.empty(); }

  bool contains(const RatVec& x) const {
    for (const auto& h : halfspaces_)
      if (dot(h.normal, x) + h.offset < 0) return false;
    return true;
  }

  /// Affine dimension (-1 for the empty polytope).
  long dimension() const {
    if (vertices_.empty()) return -1;
    std::vector<RatVec> diffs;
    for (const auto& v : vertices_) diffs.push_back(v - vertices_.front());
    return static_cast<long>(rank_of(diffs, rank_));
  }

  /// Indices of halfspaces that hold with equality at vertex v.
  std::vector<std::size_t> tight_at(const RatVec& v) const {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
      if (dot(halfspaces_[i].normal, v) + halfspaces_[i].offset == 0) t.push_back(i);
    return t;
  }

  /// Indices of the halfspaces that define facets (first index wins among
  /// duplicates). Requires a full-dimensional polytope.
  std::vector<std::size_t> facet_indices() const {
    std::vector<std::size_t> out;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
      std::vector<std::size_t> on;
      std::vector<RatVec> lifted;
      for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (dot(halfspaces_[i].normal, vertices_[v]) + halfspaces_[i].offset == 0) {
          on.push_back(v);
          RatVec g(vertices_[v]);
          g.push_back(1);
          lifted.push_back(std::move(g));
        }
      if (rank_of(lifted, rank_ + 1) != rank_) continue;
      if (seen.insert(on).second) out.push_back(i);
    }
    return out;
  }

private:
  static Halfspace split(const IntVec& g, std::size_t rank) {
    return {IntVec(g.begin(), g.begin() + rank), Rational(g[rank])};
  }

  std::size_t rank_ = 0;
  std::vector<RatVec> vertices_;
  std::vector<Halfspace> halfspaces_;
};

/// Integer points of a bounded polytope, lexicographically ordered.
inline std::vector<IntVec> lattice_points(const RationalPolytope& p) {
  std::vector<IntVec> out;
  if (p.empty()) return out;
  const std::size_t n = p.ambient_rank();
  IntVec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (lo[i] > hi[i]) return out;
  }
  if (n == 0) {
    out.push_back({});
    return out;
  }
  IntVec x = lo;
  while (true) {
    if (p.contains(to_rational(x))) out.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        for (std::size_t j = i + 1; j < n; ++j) x[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

} // namespace toricox
