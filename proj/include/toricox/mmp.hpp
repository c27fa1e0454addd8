#pragma once

// One step of the Picard-rank reduction: choose L, build Y = P(O + O(L)),
// contract both boundary sections through the section ring of
// H = pi^*A + b (E0 + Einf), and certify the resulting pair.

#include "bundle.hpp"
#include "chamber.hpp"
#include "singularity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricox {

enum class Mode { kFano, kCalabiYau };

inline const char* to_string(Mode m) { return m == Mode::kFano ? "fano" : "cy"; }

// ---------------------------------------------------------------------------
// Reference ample class and the choice of L

/// A = -(K + boundary) in Fano mode. In log CY mode -(K + boundary) is
/// trivial, so A is -K when that is ample and otherwise the first ample
/// class in lexicographic order within a small box.
inline TorusDivisor reference_ample(const LogPair& p, Mode mode) {
  const auto& x = p.variety;
  if (mode == Mode::kFano) return -log_canonical_divisor(p);
  auto mk = -canonical_divisor(x);
  if (is_ample(x, mk)) return mk;
  for (long r = 1; r <= 4; ++r) {
    std::optional<TorusDivisor> hit;
    DegreeBox::radius(x.class_rank(), r).for_each([&](const std::vector<long>& c) {
      if (hit) return;
      RatVec cls(c.begin(), c.end());
      auto d = x.representative(cls);
      if (is_ample(x, d)) hit = d;
    });
    if (hit) return *hit;
  }
  throw SearchExhausted("no ample class found for the reference divisor", 4);
}

struct LChoice {
  TorusDivisor L;
  IntVec cls;
  SegmentScan plus, minus; // A + tL and A - tL
};

/// Reasons a class is not admissible as L (empty when it is).
inline std::string l_rejection(const ToricVariety& x, const TorusDivisor& A, const IntVec& c,
                               SegmentScan* plus = nullptr, SegmentScan* minus = nullptr) {
  if (is_zero(c)) return "L is zero";
  RatVec q = to_rational(c);
  if (is_effective_class(x, q)) return "L is effective";
  if (is_effective_class(x, -q)) return "-L is effective";
  if (!is_cartier_class(x, q)) return "L is not Cartier";
  auto L = x.representative(q);
  auto sp = scan_segment(x, A.coefficients, L.coefficients);
  if (!sp.transverse) return "segment towards L: " + sp.problem;
  auto sm = scan_segment(x, A.coefficients, (-L).coefficients);
  if (!sm.transverse) return "segment towards -L: " + sm.problem;
  if (plus) *plus = sp;
  if (minus) *minus = sm;
  return "";
}

namespace detail {

// Points of the lattice spanned by the columns of gens with max-norm exactly
// r, in lexicographic order. Walks a triangular basis of the lattice.
inline std::vector<IntVec> lattice_shell(const IntMatrix& gens, long r) {
  const std::size_t n = gens.rows();
  auto h = hermite_form(gens.transpose()).H; // rows: echelon basis
  std::vector<IntVec> basis;
  for (std::size_t i = 0; i < h.rows() && basis.size() < n; ++i)
    if (!is_zero(h.row(i))) basis.push_back(h.row(i));
  if (basis.size() != n) throw Error("lattice_shell: lattice is not of full rank");
  for (std::size_t i = 0; i < n; ++i)
    if (basis[i][i] <= 0) throw Error("lattice_shell: basis is not triangular");
  std::vector<IntVec> out;
  IntVec cur(n, Integer(0));
  const Integer R(r);
  std::function<void(std::size_t, const IntVec&)> rec = [&](std::size_t i, const IntVec& partial) {
    if (i == n) {
      Integer mx = 0;
      for (const auto& v : partial) mx = std::max(mx, Integer(abs(v)));
      if (mx == R) out.push_back(partial);
      return;
    }
    // coordinate i of the point is partial[i] + z basis[i][i]
    const Rational piv(basis[i][i]); // positive in Hermite form
    Integer lo = ceil_of(Rational(-R - partial[i]) / piv), hi = floor_of(Rational(R - partial[i]) / piv);
    for (Integer z = lo; z <= hi; ++z) {
      IntVec next = partial;
      for (std::size_t j = i; j < n; ++j) next[j] += z * basis[i][j];
      rec(i + 1, next);
    }
  };
  rec(0, cur);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// Smallest admissible class in lexicographic order, searching boxes of
/// growing radius. Only Cartier classes are visited: the search walks the
/// image of Pic(X) in Cl(X), which may have large index on singular X.
inline LChoice select_L(const LogPair& p, Mode mode, long max_radius = 64) {
  const auto& x = p.variety;
  if (x.class_rank() < 2) throw InputRejected("select_L: class rank is " + std::to_string(x.class_rank()) + ", need at least 2");
  auto A = reference_ample(p, mode);
  const auto pic = picard_lattice(x);
  for (long r = 1; r <= max_radius; ++r) {
    for (const auto& cls : detail::lattice_shell(pic, r)) {
      LChoice ch;
      if (l_rejection(x, A, cls, &ch.plus, &ch.minus).empty()) {
        ch.cls = cls;
        ch.L = x.representative(to_rational(cls));
        return ch;
      }
    }
  }
  throw SearchExhausted("select_L: no admissible L with coefficients up to " + std::to_string(max_radius), max_radius);
}

/// Validates a user-supplied class and packages it like select_L.
inline LChoice choose_L(const LogPair& p, Mode mode, const IntVec& cls) {
  const auto& x = p.variety;
  if (cls.size() != x.class_rank()) throw InputRejected("L has " + std::to_string(cls.size()) + " entries, class rank is " + std::to_string(x.class_rank()));
  auto A = reference_ample(p, mode);
  LChoice ch;
  auto why = l_rejection(x, A, cls, &ch.plus, &ch.minus);
  if (!why.empty()) throw InputRejected("L = " + vec_to_string(cls) + " is not admissible: " + why);
  ch.cls = cls;
  ch.L = x.representative(to_rational(cls));
  return ch;
}

/// (a+, a-): where A + tL and A - tL leave the effective cone of the base.
inline std::pair<Rational, Rational> boundary_effective_thresholds(const BundleData& y, const TorusDivisor& A) {
  const auto& x = y.base;
  auto lc = x.rational_class(y.L);
  if (is_effective_class(x, lc)) throw InputRejected("boundary_effective_thresholds: L is effective");
  if (is_effective_class(x, -lc)) throw InputRejected("boundary_effective_thresholds: -L is effective");
  auto ap = effective_threshold(x, A.coefficients, y.L.coefficients);
  auto am = effective_threshold(x, A.coefficients, (-y.L).coefficients);
  if (!ap || !am) throw Error("boundary_effective_thresholds: unbounded threshold");
  if (*ap <= 0 || *am <= 0) throw InputRejected("boundary_effective_thresholds: A lies on the boundary of the effective cone");
  return {*ap, *am};
}

// ---------------------------------------------------------------------------
// Contraction

struct Contraction {
  RationalPolytope polytope;       // P_H in M x Z
  Integer n = 1;                   // smallest n with n P_H a lattice polytope
  Fan fan;                         // normal fan of P_H
  std::vector<std::size_t> origin; // X' ray -> Y ray
  std::optional<LogPair> pair;     // (X', boundary') when the fan is complete and simplicial
  std::string failure;             // why it did not
};

inline TorusDivisor bundle_divisor(const BundleData& y, const TorusDivisor& A, const Rational& s0, const Rational& sinf) {
  auto d = pullback(y, A);
  d[y.e0_ray] += s0;
  d[y.einf_ray] += sinf;
  return d;
}

inline Fan polytope_fan(const BundleData& y, const TorusDivisor& d) {
  return normal_fan(divisor_polytope(y.Y.fan(), d.coefficients));
}

/// X' = Proj of the section ring of H = pi^*A + b (E0 + Einf), with the
/// boundary transported along the surviving lifted rays.
inline Contraction contract_boundary(const BundleData& y, const TorusDivisor& A, const TorusDivisor& delta, const Rational& b) {
  auto [ap, am] = boundary_effective_thresholds(y, A);
  if (b <= ap || b <= am)
    throw InputRejected("contract_boundary: b = " + to_string(b) + " must exceed a+ = " + to_string(ap) + " and a- = " + to_string(am));
  Contraction c;
  auto H = bundle_divisor(y, A, b, b);
  c.polytope = divisor_polytope(y.Y.fan(), H.coefficients);
  if (c.polytope.dimension() != static_cast<long>(y.Y.dimension())) throw InputRejected("contract_boundary: H is not big");
  for (const auto& v : c.polytope.vertices())
    for (const auto& q : v) c.n = lcm(c.n, Integer(q.get_den()));
  c.fan = normal_fan(c.polytope);
  TorusDivisor dp = TorusDivisor::zero(c.fan.ray_count());
  for (std::size_t k = 0; k < c.fan.ray_count(); ++k) {
    auto i = y.Y.fan().ray_index(c.fan.rays()[k]);
    if (!i) throw Error("contract_boundary: normal fan ray is not a ray of Y");
    c.origin.push_back(*i);
    if (*i < y.base.ray_count()) dp[k] = delta[*i];
  }
  try {
    c.pair = LogPair(make_variety(c.fan, true), dp);
  } catch (const InputRejected& e) {
    c.failure = e.what();
  }
  return c;
}

// ---------------------------------------------------------------------------
// Wall walk

struct WallCrossing {
  int segment = 0;   // 1: raising E0, 2: raising Einf
  Rational position; // coefficient of the boundary divisor being raised
  enum Kind { kFlip, kDivisorial } kind = kFlip;
  std::size_t contracted_locus_dim = 0;
  Fan before, after;
};

inline const char* to_string(WallCrossing::Kind k) { return k == WallCrossing::kFlip ? "flip" : "divisorial"; }

struct WalkResult {
  Rational epsilon, a_plus, a_minus;
  std::vector<WallCrossing> crossings;
  std::vector<Fan> models;  // Y = models.front(), ..., models.back() = X'
  bool starts_at_Y = false;
  bool base_walls_agree = false; // crossings sit exactly at base walls and exits
};

namespace detail {

using ConeSet = std::set<std::set<IntVec>>;

inline ConeSet all_faces(const Fan& f) {
  ConeSet out;
  for (const auto& c : f.cones()) {
    auto vecs = f.ray_vectors(c);
    const std::size_t k = vecs.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::set<IntVec> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) s.insert(vecs[i]);
      out.insert(std::move(s));
    }
  }
  return out;
}

inline ConeSet maximal_cones(const Fan& f) {
  ConeSet out;
  for (const auto& c : f.cones()) {
    auto v = f.ray_vectors(c);
    out.insert(std::set<IntVec>(v.begin(), v.end()));
  }
  return out;
}

} // namespace detail

/// Same fan up to the order of rays and cones.
inline bool same_fan(const Fan& a, const Fan& b) {
  return a.ambient_rank() == b.ambient_rank() && detail::maximal_cones(a) == detail::maximal_cones(b);
}

/// Traces pi^*A + s E0 + eps Einf for s from eps to b, then
/// pi^*A + b E0 + s Einf for s from eps to b, recomputing the normal fan of
/// the section polytope between exact breakpoints. Breakpoints come from
/// vertex collisions of the polytope of Y; they are then compared with the
/// walls of the base along A + tL and A - tL.
inline WalkResult wall_walk(const BundleData& y, const TorusDivisor& A, const Rational& b) {
  const auto& fy = y.Y.fan();
  const auto& x = y.base;
  WalkResult w;
  std::tie(w.a_plus, w.a_minus) = boundary_effective_thresholds(y, A);
  if (b <= w.a_plus || b <= w.a_minus) throw InputRejected("wall_walk: b must exceed both thresholds");
  auto sp = scan_segment(x, A.coefficients, y.L.coefficients);
  auto sm = scan_segment(x, A.coefficients, (-y.L).coefficients);
  if (!sp.transverse) throw InputRejected("wall_walk: inadmissible L, " + sp.problem);
  if (!sm.transverse) throw InputRejected("wall_walk: inadmissible L, " + sm.problem);

  Rational first = std::min(w.a_plus, w.a_minus);
  for (const auto& t : type_change_candidates(x.fan(), A.coefficients, y.L.coefficients)) first = std::min(first, t);
  for (const auto& t : type_change_candidates(x.fan(), A.coefficients, (-y.L).coefficients)) first = std::min(first, t);
  w.epsilon = first / 2;
  if (w.epsilon > 1) w.epsilon = 1;

  Fan current = polytope_fan(y, bundle_divisor(y, A, w.epsilon, w.epsilon));
  w.starts_at_Y = same_fan(current, fy);
  w.models.push_back(current);
  std::vector<Rational> expected_positions[2];
  for (const auto& wall : sp.walls) expected_positions[0].push_back(wall.t);
  expected_positions[0].push_back(w.a_plus);
  for (const auto& wall : sm.walls) expected_positions[1].push_back(wall.t);
  expected_positions[1].push_back(w.a_minus);
  bool agree = true;

  for (int seg = 1; seg <= 2; ++seg) {
    auto base = seg == 1 ? bundle_divisor(y, A, 0, w.epsilon) : bundle_divisor(y, A, b, 0);
    auto dir = TorusDivisor::zero(fy.ray_count());
    dir[seg == 1 ? y.e0_ray : y.einf_ray] = 1;
    std::vector<Rational> cuts;
    for (const auto& t : type_change_candidates(fy, base.coefficients, dir.coefficients))
      if (t > w.epsilon && t < b) cuts.push_back(t);
    std::vector<Rational> seen;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      Rational lo = k == 0 ? w.epsilon : cuts[k - 1];
      Rational hi = k == cuts.size() ? b : cuts[k];
      Fan next = polytope_fan(y, base + ((lo + hi) / 2) * dir);
      if (same_fan(next, current)) continue;
      WallCrossing c;
      c.segment = seg;
      c.position = lo;
      long drop = static_cast<long>(current.ray_count()) - static_cast<long>(next.ray_count());
      if (drop == 1) c.kind = WallCrossing::kDivisorial;
      else if (drop == 0) c.kind = WallCrossing::kFlip;
      else
        throw InputRejected("wall_walk: simultaneous wall crossing at " + to_string(lo) + " (ray count changes by " +
                            std::to_string(-drop) + "), inadmissible L");
      auto before = detail::all_faces(current), after = detail::all_faces(next);
      std::size_t mind = fy.ambient_rank();
      for (const auto& f : before)
        if (!after.count(f)) mind = std::min(mind, f.size());
      c.contracted_locus_dim = fy.ambient_rank() - mind;
      c.before = current;
      c.after = next;
      w.crossings.push_back(c);
      w.models.push_back(next);
      seen.push_back(lo);
      current = next;
    }
    if (seen != expected_positions[seg - 1]) agree = false;
  }
  w.base_walls_agree = agree;
  return w;
}

// ---------------------------------------------------------------------------
// Certification

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReductionStep {
  LogPair base;
  Mode mode = Mode::kFano;
  LChoice L;
  TorusDivisor A;
  BundleData Y;
  Rational a_plus, a_minus, b;
  Contraction contraction;
  WalkResult walk;
  std::vector<Check> checks;
  bool certified() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const LogPair& xprime() const { return *contraction.pair; }
};

/// Cox(X') against the Z/m-invariant part of Cox(X). Write L = m R_0 with
/// R_0 primitive and extend to a basis R_0..R_{r-1} of the free part of
/// Cl(X) (fixed torus-invariant representatives). Then the pullbacks of
/// R_1..R_{r-1} must form a basis of the free part of Cl(X'), and
///   h0(X', sum a_j pi^*R_j) = sum_k h0(X, k L + sum a_j R_j)
/// for every a in the box. Both sides count sections of explicit Weil
/// divisors, so torsion in either class group is handled exactly. When
/// neither side has torsion the same identity is also checked through the
/// graded Cox rings (invariant degrees summed along the L axis).
struct CoverCheck {
  Integer m = 1;
  bool basis_ok = false;
  bool tables_equal = false;
  bool graded_checked = false;
  std::size_t degrees_checked = 0;
  HilbertTable xprime_table, cover_table;
};

namespace detail {

// Integers k with c + k l in the cone (bounded because +-l is not in it).
inline std::pair<Integer, Integer> integer_interval(const RationalCone& eff, const RatVec& c, const RatVec& l) {
  std::optional<Rational> lo, hi;
  bool empty = false;
  for (const auto& f : cone_facets(eff.rays, eff.ambient_rank)) {
    Rational nc = dot(f.normal, c), nl = dot(f.normal, l);
    if (nl > 0) {
      Rational t = -nc / nl;
      if (!lo || t > *lo) lo = t;
    } else if (nl < 0) {
      Rational t = nc / -nl;
      if (!hi || t < *hi) hi = t;
    } else if (nc < 0) {
      empty = true;
    }
  }
  if (!lo || !hi) throw Error("integer_interval: L direction is not bounded by the effective cone");
  if (empty || *lo > *hi) return {Integer(1), Integer(0)};
  return {ceil_of(*lo), floor_of(*hi)};
}

} // namespace detail

inline CoverCheck cyclic_cover_check(const ToricVariety& x, const IntVec& lclass, const ToricVariety& xp,
                                     const std::vector<std::size_t>& origin, long radius) {
  CoverCheck cc;
  const std::size_t r = x.class_rank();
  if (xp.class_rank() + 1 != r || xp.ray_count() != origin.size()) return cc;
  for (auto o : origin)
    if (o >= x.ray_count()) return cc;
  cc.m = content(lclass);
  IntVec l0 = lclass;
  for (auto& c : l0) c /= cc.m;
  IntMatrix B = complete_to_basis(l0); // rows: R_0 = l0, R_1, ...
  std::vector<TorusDivisor> R, Rp;
  for (std::size_t j = 0; j < r; ++j) R.push_back(x.representative(to_rational(B.row(j))));
  const TorusDivisor L = Rational(cc.m) * R[0];
  for (std::size_t j = 1; j < r; ++j) {
    TorusDivisor d = TorusDivisor::zero(xp.ray_count());
    for (std::size_t k = 0; k < origin.size(); ++k) d[k] = R[j][origin[k]];
    Rp.push_back(d);
  }
  IntMatrix G(r - 1, r - 1);
  for (std::size_t j = 0; j + 1 < r; ++j) {
    auto q = xp.rational_class(Rp[j]);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (!is_integral(q[i])) return cc;
      G(i, j) = q[i].get_num();
    }
  }
  if (abs(determinant(G)) != 1) return cc;
  cc.basis_ok = true;

  auto box = DegreeBox::radius(r - 1, radius);
  auto eff = effective_cone(x);
  const RatVec lq = x.rational_class(L);
  cc.xprime_table.rank = cc.cover_table.rank = r - 1;
  box.for_each([&](const std::vector<long>& a) {
    TorusDivisor dp = TorusDivisor::zero(xp.ray_count()), d = TorusDivisor::zero(x.ray_count());
    for (std::size_t j = 0; j + 1 < r; ++j) {
      dp = dp + Rational(a[j]) * Rp[j];
      d = d + Rational(a[j]) * R[j + 1];
    }
    cc.xprime_table.entries[a] = h0(xp, dp);
    auto [lo, hi] = detail::integer_interval(eff, x.rational_class(d), lq);
    std::uint64_t sum = 0;
    for (Integer k = lo; k <= hi; ++k) sum += h0(x, d + Rational(k) * L);
    cc.cover_table.entries[a] = sum;
    ++cc.degrees_checked;
  });
  cc.tables_equal = cc.xprime_table == cc.cover_table;

  if (x.torsion().empty() && xp.torsion().empty()) {
    // graded route: Cox(X) in coordinates y = B^{-T} c, Cox(X') in the
    // pullback basis; invariant degrees summed along the L axis
    auto binv = *inverse(to_rational(B.transpose()));
    IntMatrix T(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) T(i, j) = Integer(binv(i, j));
    auto ginv = *inverse(to_rational(G));
    IntMatrix Gi(r - 1, r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i)
      for (std::size_t j = 0; j + 1 < r; ++j) Gi(i, j) = Integer(ginv(i, j));
    auto cover = cover_hilbert(cox_ring(x).regraded(T), 0, to_long(cc.m), box);
    auto direct = hilbert_table(cox_ring(xp).regraded(Gi), box);
    cc.graded_checked = true;
    cc.tables_equal = cc.tables_equal && cover == cc.cover_table && direct == cc.xprime_table;
  }
  return cc;
}

struct StepOptions {
  std::optional<IntVec> L;     // force this class instead of searching
  long l_search_radius = 64;
  long cover_radius = 2;       // Hilbert box for the cyclic cover check (0 disables)
};

inline void certify_step(ReductionStep& s, long cover_radius) {
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    s.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& x = s.base.variety;
  add("adjunction", check_adjunction(s.Y), "K_Y = pi^*K_X - E0 - Einf in Cl(Y)");
  add("boundary_relation", boundary_relation(s.Y), "E0 ~ pi^*L + Einf");
  {
    auto pb = pullback_basis(s.Y);
    add("pullback_basis", pb.unimodular && pb.consistent, "pi^*B_1..pi^*B_r, Einf is a Z-basis of Cl(Y)");
  }
  // the bundle pair with the boundary sections at coefficient 1
  auto gamma = pullback(s.Y, s.base.boundary);
  gamma[s.Y.e0_ray] = 1;
  gamma[s.Y.einf_ray] = 1;
  LogPair yp(s.Y.Y, gamma);
  auto yrep = classify(yp);
  if (s.mode == Mode::kFano) {
    // (1 - eps) on both sections is klt for small eps iff the coefficient-1
    // pair is lc and psi vanishes on no ray other than E0, Einf
    bool ok = at_least(yrep.classification, Singularity::kLc);
    for (std::size_t i = 0; i < gamma.size(); ++i)
      if (i != s.Y.e0_ray && i != s.Y.einf_ray && gamma[i] >= 1) ok = false;
    add("bundle_pair_klt", ok, std::string("(Y, pi^*D + (1-eps)(E0 + Einf)); coefficient-1 pair is ") + to_string(yrep.classification));
  } else {
    bool lc = at_least(yrep.classification, Singularity::kLc);
    bool triv = is_zero(s.Y.Y.rational_class(log_canonical_divisor(yp)));
    add("bundle_pair_log_cy", lc && triv, std::string("(Y, pi^*D + E0 + Einf) is ") + to_string(yrep.classification) + (triv ? ", K + boundary ~ 0" : ", K + boundary not trivial"));
  }
  add("walk_starts_at_Y", s.walk.starts_at_Y, "normal fan at (eps, eps) is the fan of Y");
  add("walk_matches_base_walls", s.walk.base_walls_agree, "crossings occur exactly at base walls and effective thresholds");
  add("walk_ends_at_X'", same_fan(s.walk.models.back(), s.contraction.fan), "last model of the walk is the normal fan of P_H");
  bool small = s.contraction.fan.ray_count() == x.ray_count();
  for (auto o : s.contraction.origin)
    if (o == s.Y.e0_ray || o == s.Y.einf_ray) small = false;
  add("small_compactification", small, "rays of X' are exactly the lifted rays of X");
  add("q_factorial", is_simplicial(s.contraction.fan), "fan of X' is simplicial");
  if (!s.contraction.pair) {
    add("x_prime_valid", false, s.contraction.failure);
    return;
  }
  const auto& xp = *s.contraction.pair;
  add("class_rank_drops_by_one", xp.variety.class_rank() + 1 == x.class_rank(),
      "rank Cl(X') = " + std::to_string(xp.variety.class_rank()) + ", rank Cl(X) = " + std::to_string(x.class_rank()));
  auto rep = classify(xp);
  if (s.mode == Mode::kFano) {
    add("anti_log_canonical_ample", is_ample(xp.variety, -log_canonical_divisor(xp)), "-(K' + D') ample on X'");
    add("klt", at_least(rep.classification, Singularity::kKlt), std::string("(X', D') is ") + to_string(rep.classification));
  } else {
    add("log_canonical_trivial", is_zero(xp.variety.rational_class(log_canonical_divisor(xp))), "K' + D' ~ 0 on X'");
    add("lc", at_least(rep.classification, Singularity::kLc), std::string("(X', D') is ") + to_string(rep.classification));
  }
  if (cover_radius > 0) {
    auto cc = cyclic_cover_check(x, s.L.cls, xp.variety, s.contraction.origin, cover_radius);
    add("cyclic_cover", cc.basis_ok && cc.tables_equal,
        std::string(cc.basis_ok ? "" : "pullbacks do not form a basis of Cl(X') mod torsion; ") + "L = " + cc.m.get_str() + " R0, " +
            std::to_string(cc.degrees_checked) + " degrees compared" + (cc.graded_checked ? " (sections and graded Cox rings)" : " (sections)"));
  }
}

inline ReductionStep reduction_step(const LogPair& base, Mode mode, const StepOptions& opt = {}) {
  ReductionStep s;
  s.base = base;
  s.mode = mode;
  s.L = opt.L ? choose_L(base, mode, *opt.L) : select_L(base, mode, opt.l_search_radius);
  s.A = reference_ample(base, mode);
  s.Y = projectivize(base.variety, s.L.L);
  std::tie(s.a_plus, s.a_minus) = boundary_effective_thresholds(s.Y, s.A);
  s.b = std::max(s.a_plus, s.a_minus) + 1;
  s.contraction = contract_boundary(s.Y, s.A, base.boundary, s.b);
  s.walk = wall_walk(s.Y, s.A, s.b);
  certify_step(s, opt.cover_radius);
  return s;
}

} // namespace toricox
