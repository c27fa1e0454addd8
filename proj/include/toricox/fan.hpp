#pragma once

// Fans: maximal cones over an ordered ray list, their predicates, stellar
// subdivision and toric resolution of singularities.

#include "polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toricox {

using RayIndices = std::vector<std::size_t>;

class Fan {
public:
  Fan() = default;

  /// Checks ray primitivity, uniqueness, usage, index ranges and strong
  /// convexity; non-maximal cones are dropped. `check_intersections` also
  /// verifies that every pair of cones meets along a common face.
  Fan(std::size_t rank, std::vector<IntVec> rays, std::vector<RayIndices> cones, bool check_intersections = false)
      : rank_(rank), rays_(std::move(rays)) {
    std::set<IntVec> seen;
    for (const auto& r : rays_) {
      if (r.size() != rank_) throw InputRejected("fan ray " + vec_to_string(r) + " has wrong length");
      if (!is_primitive(r)) throw InputRejected("fan ray " + vec_to_string(r) + " is not primitive");
      if (!seen.insert(r).second) throw InputRejected("duplicate fan ray " + vec_to_string(r));
    }
    for (auto& c : cones) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      for (auto i : c)
        if (i >= rays_.size()) throw InputRejected("cone refers to ray index " + std::to_string(i) + " out of range");
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    for (std::size_t i = 0; i < cones.size(); ++i) {
      bool contained = false;
      for (std::size_t j = 0; j < cones.size() && !contained; ++j)
        contained = i != j && std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end());
      if (!contained) cones_.push_back(cones[i]);
    }
    std::vector<bool> used(rays_.size(), false);
    for (const auto& c : cones_) {
      for (auto i : c) used[i] = true;
      if (!is_strongly_convex(RationalCone(rank_, ray_vectors(c))))
        throw InputRejected("fan cone " + cone_to_string(c) + " is not strongly convex");
    }
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) throw InputRejected("fan ray " + vec_to_string(rays_[i]) + " belongs to no cone");
    if (check_intersections) check_proper_intersections();
  }

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<RayIndices>& cones() const { return cones_; }
  std::size_t ray_count() const { return rays_.size(); }

  std::vector<IntVec> ray_vectors(const RayIndices& c) const {
    std::vector<IntVec> v;
    for (auto i : c) v.push_back(rays_[i]);
    return v;
  }

  std::optional<std::size_t> ray_index(const IntVec& v) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (rays_[i] == v) return i;
    return std::nullopt;
  }

  /// Maximal cones containing v (rational point).
  std::vector<std::size_t> cones_containing(const RatVec& v) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < cones_.size(); ++k)
      if (cone_contains(RationalCone(rank_, ray_vectors(cones_[k])), v)) out.push_back(k);
    return out;
  }

  bool in_support(const RatVec& v) const { return !cones_containing(v).empty(); }

  std::string cone_to_string(const RayIndices& c) const {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + vec_to_string(rays_[c[i]]);
    return s + "}";
  }

  /// Throws InputRejected if two cones meet in something other than a
  /// common face.
  void check_proper_intersections() const {
    for (std::size_t a = 0; a < cones_.size(); ++a)
      for (std::size_t b = a + 1; b < cones_.size(); ++b) {
        const auto& s = cones_[a];
        const auto& t = cones_[b];
        RayIndices shared;
        std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(shared));
        std::vector<IntVec> gens;
        std::vector<bool> must_be_lineal;
        for (auto i : s) {
          gens.push_back(rays_[i]);
          must_be_lineal.push_back(std::binary_search(shared.begin(), shared.end(), i));
        }
        for (auto i : t) {
          gens.push_back(-rays_[i]);
          must_be_lineal.push_back(std::binary_search(shared.begin(), shared.end(), i));
        }
        auto dual = dual_cone(RationalCone(rank_, gens));
        for (std::size_t g = 0; g < gens.size(); ++g) {
          bool lineal = std::all_of(dual.rays.begin(), dual.rays.end(), [&](const IntVec& d) { return dot(d, gens[g]) == 0; });
          if (lineal != must_be_lineal[g])
            throw InputRejected("fan cones " + cone_to_string(s) + " and " + cone_to_string(t) +
                                " do not meet along a common face");
        }
      }
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

private:
  std::size_t rank_ = 0;
  std::vector<IntVec> rays_;
  std::vector<RayIndices> cones_;
};

// ---------------------------------------------------------------------------
// Predicates

inline bool is_simplicial(const Fan& f) {
  for (const auto& c : f.cones())
    if (rank_of(f.ray_vectors(c), f.ambient_rank()) != c.size()) return false;
  return true;
}

/// Index of the sublattice spanned by a simplicial cone's rays inside the
/// saturated lattice of its span (1 for smooth cones).
inline Integer multiplicity(const std::vector<IntVec>& rays, std::size_t rank) {
  if (rays.empty()) return 1;
  IntMatrix b(rank, rays.size());
  for (std::size_t j = 0; j < rays.size(); ++j)
    for (std::size_t i = 0; i < rank; ++i) b(i, j) = rays[j][i];
  Integer m = 1;
  for (const auto& d : smith_form(b).invariant_factors()) m *= d;
  return m;
}

inline bool is_smooth(const Fan& f) {
  if (!is_simplicial(f)) return false;
  for (const auto& c : f.cones())
    if (multiplicity(f.ray_vectors(c), f.ambient_rank()) != 1) return false;
  return true;
}

/// Facets of a maximal cone as ray-index sets.
inline std::vector<RayIndices> cone_facet_sets(const Fan& f, const RayIndices& c) {
  std::vector<RayIndices> out;
  for (const auto& facet : cone_facets(f.ray_vectors(c), f.ambient_rank())) {
    RayIndices s;
    for (auto i : facet.on_facet) s.push_back(c[i]);
    out.push_back(std::move(s));
  }
  return out;
}

/// Support is all of N_Q: every maximal cone is full-dimensional and every
/// facet of a maximal cone is shared by exactly two maximal cones.
inline bool is_complete(const Fan& f) {
  const std::size_t n = f.ambient_rank();
  std::map<RayIndices, int> walls;
  for (const auto& c : f.cones()) {
    if (rank_of(f.ray_vectors(c), n) != n) return false;
    for (auto& w : cone_facet_sets(f, c)) ++walls[w];
  }
  if (n == 0) return f.cones().size() == 1;
  for (const auto& [w, count] : walls)
    if (count != 2) return false;
  return !f.cones().empty();
}

// ---------------------------------------------------------------------------
// Simplicial cone coordinates and fundamental parallelepipeds

/// Coefficients c with sum c_i rays_i == x, if x lies in the span.
inline std::optional<RatVec> simplicial_coordinates(const std::vector<IntVec>& rays, std::size_t rank, const RatVec& x) {
  RatMatrix b(rank, rays.size());
  for (std::size_t j = 0; j < rays.size(); ++j)
    for (std::size_t i = 0; i < rank; ++i) b(i, j) = rays[j][i];
  return solve(b, x);
}

/// Lattice points sum c_i r_i with 0 <= c_i < 1 (including the origin) of a
/// simplicial cone; there are multiplicity-many of them.
inline std::vector<IntVec> parallelepiped_points(const std::vector<IntVec>& rays, std::size_t rank) {
  const std::size_t k = rays.size();
  IntMatrix b(rank, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rank; ++i) b(i, j) = rays[j][i];
  auto snf = smith_form(b);
  auto uinv = inverse(to_rational(snf.U));
  std::vector<Integer> moduli(k);
  for (std::size_t i = 0; i < k; ++i) moduli[i] = snf.S(i, i);
  std::set<IntVec> pts;
  IntVec y(rank, Integer(0));
  while (true) {
    RatVec x = (*uinv) * y;
    auto c = simplicial_coordinates(rays, rank, x);
    RatVec p(rank, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
      Rational frac = (*c)[j] - Rational(floor_of((*c)[j]));
      for (std::size_t i = 0; i < rank; ++i) p[i] += frac * rays[j][i];
    }
    IntVec pi(rank);
    for (std::size_t i = 0; i < rank; ++i) pi[i] = Integer(p[i]);
    pts.insert(pi);
    std::size_t i = 0;
    while (i < k) {
      if (++y[i] < moduli[i]) break;
      y[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return {pts.begin(), pts.end()};
}

// ---------------------------------------------------------------------------
// Subdivision and resolution

/// Star subdivision of f at the primitive vector v.
inline Fan stellar_subdivide(const Fan& f, const IntVec& v) {
  if (v.size() != f.ambient_rank()) throw InputRejected("stellar_subdivide: vector has wrong length");
  if (!is_primitive(v)) throw InputRejected("stellar_subdivide: " + vec_to_string(v) + " is not primitive");
  if (f.ray_index(v)) throw InputRejected("stellar_subdivide: " + vec_to_string(v) + " is already a ray");
  auto hits = f.cones_containing(to_rational(v));
  if (hits.empty()) throw InputRejected("stellar_subdivide: " + vec_to_string(v) + " lies outside the support");
  auto rays = f.rays();
  const std::size_t vi = rays.size();
  rays.push_back(v);
  std::vector<RayIndices> cones;
  std::set<std::size_t> hit(hits.begin(), hits.end());
  for (std::size_t k = 0; k < f.cones().size(); ++k) {
    const auto& c = f.cones()[k];
    if (!hit.count(k)) {
      cones.push_back(c);
      continue;
    }
    for (const auto& facet : cone_facets(f.ray_vectors(c), f.ambient_rank())) {
      if (dot(facet.normal, v) <= 0) continue;
      RayIndices nc;
      for (auto i : facet.on_facet) nc.push_back(c[i]);
      nc.push_back(vi);
      cones.push_back(std::move(nc));
    }
  }
  return Fan(f.ambient_rank(), std::move(rays), std::move(cones));
}

enum class ResolveOrder {
  kLowestMultiplicityFirst, ///< default: least singular cone first
  kHighestMultiplicityFirst,
};

struct Resolution {
  Fan fan;
  std::vector<IntVec> new_rays; // in insertion order
};

/// Smooth refinement by repeated star subdivision. In the chosen cone the
/// subdivision point is the nonzero parallelepiped point with the smallest
/// coordinate sum (the canonical log discrepancy), ties broken
/// lexicographically.
inline Resolution resolve(const Fan& f, ResolveOrder order = ResolveOrder::kLowestMultiplicityFirst) {
  if (!is_simplicial(f)) throw InputRejected("resolve: fan is not simplicial");
  Resolution res{f, {}};
  const std::size_t n = f.ambient_rank();
  while (true) {
    std::optional<std::pair<Integer, std::vector<IntVec>>> best;
    for (const auto& c : res.fan.cones()) {
      auto vecs = res.fan.ray_vectors(c);
      Integer m = multiplicity(vecs, n);
      if (m == 1) continue;
      std::sort(vecs.begin(), vecs.end());
      bool better = !best;
      if (best) {
        if (order == ResolveOrder::kLowestMultiplicityFirst)
          better = m < best->first || (m == best->first && vecs < best->second);
        else
          better = m > best->first || (m == best->first && vecs < best->second);
      }
      if (better) best = std::make_pair(m, vecs);
    }
    if (!best) return res;
    const auto& vecs = best->second;
    std::optional<std::pair<Rational, IntVec>> pick;
    for (const auto& p : parallelepiped_points(vecs, n)) {
      if (is_zero(p)) continue;
      auto c = simplicial_coordinates(vecs, n, to_rational(p));
      Rational s = 0;
      for (const auto& x : *c) s += x;
      if (!pick || s < pick->first || (s == pick->first && p < pick->second)) pick = std::make_pair(s, p);
    }
    res.fan = stellar_subdivide(res.fan, pick->second);
    res.new_rays.push_back(pick->second);
  }
}

// ---------------------------------------------------------------------------
// Normal fans

/// Inner normal fan of a full-dimensional polytope. Rays follow the order of
/// the facet-defining halfspaces.
inline Fan normal_fan(const RationalPolytope& p) {
  const std::size_t n = p.ambient_rank();
  if (p.dimension() != static_cast<long>(n))
    throw InputRejected("normal_fan: polytope is not full-dimensional");
  auto facets = p.facet_indices();
  std::vector<IntVec> rays;
  for (auto i : facets) rays.push_back(primitive_of(p.halfspaces()[i].normal));
  std::vector<RayIndices> cones;
  for (const auto& v : p.vertices()) {
    RayIndices c;
    for (std::size_t k = 0; k < facets.size(); ++k) {
      const auto& h = p.halfspaces()[facets[k]];
      if (dot(h.normal, v) + h.offset == 0) c.push_back(k);
    }
    cones.push_back(std::move(c));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

} // namespace toricox
