#pragma once

// Combinatorial types of section polytopes along a line A + tL in the
// divisor space, and where that type changes (chamber walls). The type of
// P_D is the list of tight-constraint sets of its vertices; two divisors
// with the same type give the same normal fan.

#include "variety.hpp"

#include <vector>

namespace toricox {

using PolytopeType = std::vector<std::vector<std::size_t>>;

/// Halfspaces <u, v_i> + d_i >= 0 for a coefficient vector d.
inline RationalPolytope divisor_polytope(const Fan& f, const RatVec& d) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < f.ray_count(); ++i) hs.push_back({f.rays()[i], d[i]});
  return RationalPolytope::from_halfspaces(f.ambient_rank(), std::move(hs));
}

inline PolytopeType polytope_type(const RationalPolytope& p) {
  PolytopeType t;
  for (const auto& v : p.vertices()) t.push_back(p.tight_at(v));
  std::sort(t.begin(), t.end());
  return t;
}

inline PolytopeType polytope_type(const Fan& f, const RatVec& d) { return polytope_type(divisor_polytope(f, d)); }

/// Codimension, in Cl(X) tensor Q, of the cone of divisors whose polytope
/// has the same type as P_d: 0 inside a chamber, 1 on a wall. The polytope
/// must be nonempty.
inline long type_codimension(const Fan& f, const RatVec& d) {
  auto p = divisor_polytope(f, d);
  if (p.empty()) throw InputRejected("type_codimension: polytope is empty");
  const std::size_t n = f.ambient_rank(), r = f.ray_count(), nv = p.vertices().size();
  // unknowns: d' (r entries) then u'_k (n entries per vertex)
  std::vector<RatVec> rows;
  for (std::size_t k = 0; k < nv; ++k)
    for (auto j : p.tight_at(p.vertices()[k])) {
      RatVec row(r + nv * n, Rational(0));
      row[j] = 1;
      for (std::size_t c = 0; c < n; ++c) row[r + k * n + c] = f.rays()[j][c];
      rows.push_back(std::move(row));
    }
  const std::size_t unknowns = r + nv * n;
  const std::size_t rk = rows.empty() ? 0 : rank_of(rows, unknowns);
  const long dim = static_cast<long>(unknowns - rk);
  return static_cast<long>(r) - dim;
}

/// Exact parameters t > 0 at which a vertex of P_{a + t l} can meet another
/// constraint: every change of type along the ray happens at one of these.
inline std::vector<Rational> type_change_candidates(const Fan& f, const RatVec& a, const RatVec& l) {
  const std::size_t n = f.ambient_rank(), r = f.ray_count();
  std::set<Rational> out;
  for_each_subset(r, n, [&](const std::vector<std::size_t>& s) {
    RatMatrix m(n, n);
    RatVec ra(n), rl(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) m(i, c) = f.rays()[s[i]][c];
      ra[i] = -a[s[i]];
      rl[i] = -l[s[i]];
    }
    if (determinant(m) == 0) return true;
    auto u0 = *solve(m, ra), u1 = *solve(m, rl);
    for (std::size_t j = 0; j < r; ++j) {
      if (std::binary_search(s.begin(), s.end(), j)) continue;
      Rational alpha = dot(u0, f.rays()[j]) + a[j];
      Rational beta = dot(u1, f.rays()[j]) + l[j];
      if (beta == 0) continue;
      Rational t = -alpha / beta;
      if (t > 0) out.insert(t);
    }
    return true;
  });
  return {out.begin(), out.end()};
}

/// Largest t with a + t l effective (in Cl tensor Q); empty if unbounded.
/// a and l are divisor coefficient vectors.
inline std::optional<Rational> effective_threshold(const ToricVariety& x, const RatVec& a, const RatVec& l) {
  auto ca = x.rational_class(TorusDivisor(a)), cl = x.rational_class(TorusDivisor(l));
  auto eff = effective_cone(x);
  if (!cone_contains(eff, ca)) throw InputRejected("effective_threshold: starting class is not effective");
  std::optional<Rational> best;
  for (const auto& f : cone_facets(eff.rays, eff.ambient_rank)) {
    Rational na = dot(f.normal, ca), nl = dot(f.normal, cl);
    if (nl < 0) {
      Rational t = na / -nl;
      if (!best || t < *best) best = t;
    }
  }
  return best;
}

struct SegmentWall {
  Rational t;
  long codimension = 0;
  PolytopeType before, at, after;
};

struct SegmentScan {
  Rational exit;                  // where a + t l leaves the effective cone
  long exit_codimension = 0;
  std::vector<SegmentWall> walls; // genuine type changes in (0, exit)
  bool transverse = true;         // one wall at a time, crossed transversally
  std::string problem;            // why not transverse
};

/// Walls met by a + t l for t in (0, exit]. Requires a ample.
inline SegmentScan scan_segment(const ToricVariety& x, const RatVec& a, const RatVec& l) {
  const auto& f = x.fan();
  SegmentScan s;
  auto exit = effective_threshold(x, a, l);
  if (!exit) throw InputRejected("scan_segment: the direction is effective, the segment never leaves the effective cone");
  if (*exit <= 0) throw InputRejected("scan_segment: starting class lies on the boundary of the effective cone");
  s.exit = *exit;
  std::vector<Rational> pts;
  for (const auto& t : type_change_candidates(f, a, l))
    if (t < *exit) pts.push_back(t);
  auto at = [&](const Rational& t) { return a + scaled(t, l); };
  std::vector<Rational> mids;
  Rational prev = 0;
  for (const auto& t : pts) {
    mids.push_back((prev + t) / 2);
    prev = t;
  }
  mids.push_back((prev + *exit) / 2);
  std::vector<PolytopeType> types;
  for (const auto& m : mids) {
    types.push_back(polytope_type(f, at(m)));
    if (type_codimension(f, at(m)) != 0 && s.transverse) {
      s.transverse = false;
      s.problem = "segment runs inside a wall near t = " + to_string(m);
    }
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    long cd = type_codimension(f, at(pts[k]));
    bool change = types[k] != types[k + 1];
    if (change) s.walls.push_back({pts[k], cd, types[k], polytope_type(f, at(pts[k])), types[k + 1]});
    if (s.transverse && ((change && cd != 1) || (!change && cd != 0))) {
      s.transverse = false;
      s.problem = "segment meets a cone of codimension " + std::to_string(cd) + " at t = " + to_string(pts[k]);
    }
  }
  s.exit_codimension = type_codimension(f, at(*exit));
  if (s.transverse && s.exit_codimension != 1) {
    s.transverse = false;
    s.problem = "segment leaves the effective cone through a cone of codimension " + std::to_string(s.exit_codimension);
  }
  return s;
}

} // namespace toricox
