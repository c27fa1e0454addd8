#pragma once

// Discrepancies of toric pairs. The log discrepancy of the toric valuation
// v is psi(v), where psi is linear on each cone with psi(v_i) = 1 - d_i.
// Minimal log discrepancies are computed two ways: by bounded enumeration
// of lattice points (route E) and from an explicit resolution (route R).

#include "variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricox {

enum class Singularity { kTerminal, kCanonical, kKlt, kLc, kNotLc };

inline const char* to_string(Singularity s) {
  switch (s) {
  case Singularity::kTerminal: return "terminal";
  case Singularity::kCanonical: return "canonical";
  case Singularity::kKlt: return "klt";
  case Singularity::kLc: return "lc";
  case Singularity::kNotLc: return "not-lc";
  }
  return "?";
}

inline bool at_least(Singularity s, Singularity bound) { return static_cast<int>(s) <= static_cast<int>(bound); }

struct LogPair {
  ToricVariety variety;
  TorusDivisor boundary;

  LogPair() = default;
  LogPair(ToricVariety x, TorusDivisor d) : variety(std::move(x)), boundary(std::move(d)) {
    if (boundary.size() != variety.ray_count()) throw InputRejected("boundary length does not match ray count");
    for (std::size_t i = 0; i < boundary.size(); ++i)
      if (boundary[i] < 0) throw InputRejected("boundary coefficient " + to_string(boundary[i]) + " is negative");
    if (!is_q_cartier(variety, canonical_divisor(variety) + boundary)) throw InputRejected("K + boundary is not Q-Cartier");
  }
  explicit LogPair(ToricVariety x) : LogPair(x, TorusDivisor::zero(x.ray_count())) {}

  /// psi on the rays: 1 - boundary coefficient.
  RatVec ray_values() const {
    RatVec a(boundary.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1 - boundary[i];
    return a;
  }
};

struct Witness {
  IntVec valuation;
  Rational log_discrepancy;
  bool operator==(const Witness&) const = default;
};

enum class MldRoute { kEnumeration, kResolution };

struct PairReport {
  Singularity classification = Singularity::kTerminal;
  /// Minimal log discrepancy over exceptional toric valuations; empty when
  /// there are none (every cone has dimension <= 1).
  std::optional<Rational> mld;
  std::vector<Witness> witness;         // minimizers (or offending rays when not lc)
  std::vector<IntVec> resolution_rays;  // exceptional rays of the resolution used (route R)
};

/// psi(v) for v in the support of the fan.
inline Rational log_discrepancy(const LogPair& p, const IntVec& v) {
  const auto& f = p.variety.fan();
  if (v.size() != f.ambient_rank()) throw InputRejected("log_discrepancy: vector has wrong length");
  auto hits = f.cones_containing(to_rational(v));
  if (hits.empty()) throw InputRejected("log_discrepancy: " + vec_to_string(v) + " lies outside the support");
  RatVec d = -p.ray_values();
  auto m = cone_support(f, f.cones()[hits.front()], d);
  if (!m) throw InputRejected("K + boundary is not Q-Cartier");
  return dot(*m, v);
}

namespace detail {

struct Candidate {
  Rational value;
  IntVec v;
};

inline void keep_min(std::optional<Rational>& best, std::vector<Witness>& wit, const Rational& val, const IntVec& v) {
  if (!best || val < *best) {
    best = val;
    wit.clear();
  }
  if (val == *best && std::find_if(wit.begin(), wit.end(), [&](const Witness& w) { return w.valuation == v; }) == wit.end())
    wit.push_back({v, val});
}

// psi at v inside a simplicial cone, via its cone coordinates.
inline Rational psi_in_cone(const Fan& f, const RayIndices& c, const RatVec& a, const IntVec& v) {
  auto coords = simplicial_coordinates(f.ray_vectors(c), f.ambient_rank(), to_rational(v));
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += (*coords)[i] * a[c[i]];
  return s;
}

// Route E: enumerate lattice points p + sum k_i r_i (p in the fundamental
// parallelepiped) of every maximal cone with psi <= bound, skipping the
// origin and multiples of rays. Requires all ray values positive.
inline void mld_by_enumeration(const LogPair& p, std::optional<Rational>& best, std::vector<Witness>& wit) {
  const auto& f = p.variety.fan();
  const auto a = p.ray_values();
  const std::size_t n = f.ambient_rank();
  // an upper bound: any two rays sharing a cone give r_i + r_j
  std::optional<Rational> bound;
  for (const auto& c : f.cones())
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (!bound || a[c[i]] + a[c[j]] < *bound) bound = a[c[i]] + a[c[j]];
  if (!bound) return;
  for (const auto& c : f.cones()) {
    if (c.size() < 2) continue;
    auto rays = f.ray_vectors(c);
    for (const auto& base : parallelepiped_points(rays, n)) {
      Rational start = psi_in_cone(f, c, a, base);
      // depth-first over multiplicities k_i with psi <= bound
      std::vector<long> k(c.size(), 0);
      std::function<void(std::size_t, Rational, IntVec)> rec = [&](std::size_t i, Rational val, IntVec v) {
        if (val > *bound) return;
        if (i == c.size()) {
          if (is_zero(v)) return;
          auto prim = primitive_of(v);
          if (f.ray_index(prim)) return; // multiple of a ray
          if (prim != v) return;         // reached through its primitive vector already
          keep_min(best, wit, val, v);
          return;
        }
        for (long t = 0;; ++t) {
          Rational nv = val + Rational(t) * a[c[i]];
          if (nv > *bound) break;
          rec(i + 1, nv, v + scaled(Integer(t), rays[i]));
        }
      };
      rec(0, start, base);
    }
  }
}

// Route R: psi on the exceptional rays of a resolution, together with the
// blowups r_i + r_j of two-dimensional faces of the smooth fan.
inline void mld_by_resolution(const LogPair& p, ResolveOrder order, std::optional<Rational>& best,
                              std::vector<Witness>& wit, std::vector<IntVec>& new_rays) {
  const auto& f = p.variety.fan();
  auto res = resolve(f, order);
  new_rays = res.new_rays;
  std::map<IntVec, Rational> psi;
  for (std::size_t i = 0; i < f.ray_count(); ++i) psi[f.rays()[i]] = 1 - p.boundary[i];
  for (const auto& r : res.new_rays) psi[r] = log_discrepancy(p, r);
  for (const auto& r : res.new_rays) keep_min(best, wit, psi[r], r);
  for (const auto& c : res.fan.cones())
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const auto& u = res.fan.rays()[c[i]];
        const auto& w = res.fan.rays()[c[j]];
        keep_min(best, wit, psi[u] + psi[w], u + w);
      }
}

} // namespace detail

/// Singularity class of the pair. Route E is the default; route R resolves
/// the fan with the given ordering and must agree.
inline PairReport classify(const LogPair& p, MldRoute route = MldRoute::kEnumeration,
                           ResolveOrder order = ResolveOrder::kLowestMultiplicityFirst) {
  const auto& f = p.variety.fan();
  if (!is_simplicial(f)) throw InputRejected("classify: fan is not simplicial");
  PairReport r;
  const auto a = p.ray_values();
  bool klt = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) {
      r.classification = Singularity::kNotLc;
      r.witness.push_back({f.rays()[i], a[i]});
    }
    if (a[i] <= 0) klt = false;
  }
  if (r.classification == Singularity::kNotLc) return r;

  std::optional<IntVec> zero_face; // primitive point inside a 2-face where psi vanishes
  if (!klt)
    for (const auto& c : f.cones())
      for (std::size_t i = 0; i < c.size() && !zero_face; ++i)
        for (std::size_t j = i + 1; j < c.size() && !zero_face; ++j)
          if (a[c[i]] == 0 && a[c[j]] == 0) zero_face = primitive_of(f.rays()[c[i]] + f.rays()[c[j]]);
  if (route == MldRoute::kEnumeration && klt) {
    detail::mld_by_enumeration(p, r.mld, r.witness);
  } else if (route == MldRoute::kEnumeration && zero_face) {
    // psi >= 0 everywhere, so an exceptional zero is the minimum
    r.mld = Rational(0);
    r.witness.push_back({*zero_face, Rational(0)});
  } else {
    detail::mld_by_resolution(p, order, r.mld, r.witness, r.resolution_rays);
  }
  std::sort(r.witness.begin(), r.witness.end(), [](const Witness& x, const Witness& y) { return x.valuation < y.valuation; });
  if (!klt || (r.mld && *r.mld <= 0)) {
    // every toric valuation has psi >= 0 once the ray values are >= 0
    r.classification = Singularity::kLc;
  } else if (!r.mld || *r.mld > 1) {
    r.classification = Singularity::kTerminal;
  } else if (*r.mld == 1) {
    r.classification = Singularity::kCanonical;
  } else {
    r.classification = Singularity::kKlt;
  }
  return r;
}

inline bool is_gorenstein(const ToricVariety& x) { return is_cartier(x, canonical_divisor(x)); }

inline TorusDivisor log_canonical_divisor(const LogPair& p) { return canonical_divisor(p.variety) + p.boundary; }

inline bool is_log_fano(const LogPair& p) {
  return at_least(classify(p).classification, Singularity::kKlt) && is_ample(p.variety, -log_canonical_divisor(p));
}

inline bool is_log_cy(const LogPair& p) {
  return at_least(classify(p).classification, Singularity::kLc) && is_zero(p.variety.rational_class(log_canonical_divisor(p)));
}

// ---------------------------------------------------------------------------
// Cones over rank-one varieties

struct ConeReport {
  Rational m;               // m L = -(K + boundary)
  Rational discrepancy_of_E; // m - 1
  Rational apex_log_discrepancy; // psi at (0,...,0,1) on the cone fan
  PairReport cone_singularity;
  TorusDivisor L;
};

struct AffineCone {
  Fan fan;         // one maximal cone in N x Z
  LogPair pair;    // the cone with the transported boundary
  ConeReport report;
};

/// The affine cone Spec of the section ring of L over a rank-one X, with
/// the exceptional divisor E of the blowup of its apex analysed twice: via
/// m - 1 and via psi of the apex ray (0,...,0,1).
inline AffineCone affine_cone(const LogPair& p, const TorusDivisor& L) {
  const auto& x = p.variety;
  if (!x.complete()) throw InputRejected("affine_cone: variety is not complete");
  if (x.class_rank() != 1) throw InputRejected("affine_cone: class rank is " + std::to_string(x.class_rank()) + ", not 1");
  if (!L.is_integral()) throw InputRejected("affine_cone: L must be integral");
  auto lc = x.rational_class(L)[0];
  if (lc <= 0 || !is_ample(x, L)) throw InputRejected("affine_cone: L is not ample");
  Rational m = x.rational_class(-log_canonical_divisor(p))[0] / lc;
  if (m < 0) throw InputRejected("affine_cone: -(K + boundary) is not a nonnegative multiple of L");

  const std::size_t n = x.dimension();
  std::vector<IntVec> rays;
  auto li = L.integral();
  RayIndices cone;
  for (std::size_t i = 0; i < x.ray_count(); ++i) {
    IntVec r = x.fan().rays()[i];
    r.push_back(li[i]);
    rays.push_back(r);
    cone.push_back(i);
  }
  Fan f(n + 1, rays, {cone});
  LogPair cp(ToricVariety::local(f), p.boundary);
  IntVec apex(n + 1, Integer(0));
  apex[n] = 1;
  ConeReport rep;
  rep.m = m;
  rep.discrepancy_of_E = m - 1;
  rep.apex_log_discrepancy = log_discrepancy(cp, apex);
  rep.cone_singularity = classify(cp);
  rep.L = L;
  return {f, cp, rep};
}

inline AffineCone affine_cone(const ToricVariety& x, const TorusDivisor& L) {
  return affine_cone(LogPair(x), L);
}

} // namespace toricox
