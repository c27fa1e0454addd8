#pragma once

// Divisor theory on a toric variety: class group, canonical divisor,
// support functions, positivity, section polytopes and the effective cone.

#include "fan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricox {

/// Torus-invariant Q-divisor: one coefficient per fan ray.
struct TorusDivisor {
  RatVec coefficients;

  TorusDivisor() = default;
  explicit TorusDivisor(RatVec c) : coefficients(std::move(c)) {}
  static TorusDivisor zero(std::size_t n) { return TorusDivisor(RatVec(n, Rational(0))); }

  std::size_t size() const { return coefficients.size(); }
  const Rational& operator[](std::size_t i) const { return coefficients[i]; }
  Rational& operator[](std::size_t i) { return coefficients[i]; }

  bool is_integral() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& q) { return toricox::is_integral(q); });
  }
  IntVec integral() const {
    IntVec r;
    for (const auto& q : coefficients) {
      if (!toricox::is_integral(q)) throw InputRejected("divisor has non-integral coefficient " + to_string(q));
      r.push_back(q.get_num());
    }
    return r;
  }

  friend TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b) { return TorusDivisor(a.coefficients + b.coefficients); }
  friend TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b) { return TorusDivisor(a.coefficients - b.coefficients); }
  friend TorusDivisor operator-(const TorusDivisor& a) { return TorusDivisor(-a.coefficients); }
  friend TorusDivisor operator*(const Rational& s, const TorusDivisor& a) { return TorusDivisor(scaled(s, a.coefficients)); }
  bool operator==(const TorusDivisor&) const = default;
};

/// Element of the free part of Cl(X) in the variety's Hermite basis.
struct DivisorClass {
  IntVec degree;
  bool operator==(const DivisorClass&) const = default;
  auto operator<=>(const DivisorClass& o) const { return degree <=> o.degree; }
};

class ToricVariety {
public:
  ToricVariety() = default;

  /// Complete simplicial fan. Torsion in the class group is rejected unless
  /// allowed (varieties produced by a reduction step may carry it).
  static ToricVariety make(Fan f, bool allow_torsion = false) {
    if (!is_complete(f)) throw InputRejected("fan is not complete");
    if (!is_simplicial(f)) throw InputRejected("fan is not simplicial");
    ToricVariety x = local(std::move(f));
    if (!allow_torsion && !x.torsion_.empty()) {
      std::vector<long> orders;
      std::string s;
      for (const auto& t : x.torsion_) {
        orders.push_back(to_long(t));
        s += (s.empty() ? "" : ",") + t.get_str();
      }
      throw TorsionClassGroup("class group has torsion of orders " + s, orders);
    }
    return x;
  }

  /// Any fan, e.g. an affine chart used for local singularity analysis.
  /// The class map covers the free part; torsion orders are recorded.
  static ToricVariety local(Fan f) {
    ToricVariety x;
    x.fan_ = std::move(f);
    const std::size_t d = x.fan_.ray_count(), n = x.fan_.ambient_rank();
    IntMatrix p(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = x.fan_.rays()[i][j];
    x.principal_ = p;
    auto snf = smith_form(p);
    std::size_t k = 0;
    while (k < std::min(d, n) && snf.S(k, k) != 0) {
      if (snf.S(k, k) > 1) x.torsion_.push_back(snf.S(k, k));
      ++k;
    }
    IntMatrix free(d - k, d);
    for (std::size_t i = k; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) free(i - k, j) = snf.U(i, j);
    auto herm = hermite_form(free);
    x.class_map_ = herm.H;
    // preimages of the basis classes: columns of U^{-1} restricted to the free rows
    auto uinv = *inverse(to_rational(snf.U));
    auto winv = *inverse(to_rational(herm.W));
    x.basis_reps_ = IntMatrix(d, d - k);
    for (std::size_t b = 0; b < d - k; ++b)
      for (std::size_t i = 0; i < d; ++i) {
        Rational s = 0;
        for (std::size_t f = 0; f < d - k; ++f) s += uinv(i, k + f) * winv(f, b);
        x.basis_reps_(i, b) = Integer(s);
      }
    x.complete_ = is_complete(x.fan_);
    return x;
  }

  const Fan& fan() const { return fan_; }
  std::size_t ray_count() const { return fan_.ray_count(); }
  std::size_t dimension() const { return fan_.ambient_rank(); }
  std::size_t class_rank() const { return class_map_.rows(); }
  const IntMatrix& class_map() const { return class_map_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool complete() const { return complete_; }

  DivisorClass ray_class(std::size_t i) const { return {class_map_.col(i)}; }

  DivisorClass class_of(const IntVec& d) const { return {class_map_ * d}; }
  DivisorClass class_of(const TorusDivisor& d) const { return class_of(d.integral()); }
  /// Class in Cl(X) tensor Q.
  RatVec rational_class(const TorusDivisor& d) const { return class_map_ * d.coefficients; }

  /// An integral divisor with the given class (and trivial torsion part).
  TorusDivisor representative(const RatVec& cls) const {
    if (cls.size() != class_rank()) throw InputRejected("class has wrong length for this variety");
    RatVec d = to_rational(basis_reps_) * cls;
    return TorusDivisor(d);
  }
  TorusDivisor representative(const DivisorClass& c) const { return representative(to_rational(c.degree)); }

  /// Difference is the divisor of a character (exact, torsion included).
  bool linearly_equivalent(const IntVec& a, const IntVec& b) const {
    return integer_solve(principal_, a - b).has_value();
  }

  /// The ray matrix: row i is ray i, so column j of the product with u
  /// gives <u, v_i>.
  const IntMatrix& principal_map() const { return principal_; }

private:
  Fan fan_;
  IntMatrix principal_, class_map_, basis_reps_;
  std::vector<Integer> torsion_;
  bool complete_ = false;
};

inline ToricVariety make_variety(Fan f, bool allow_torsion = false) { return ToricVariety::make(std::move(f), allow_torsion); }

inline TorusDivisor canonical_divisor(const ToricVariety& x) { return TorusDivisor(RatVec(x.ray_count(), Rational(-1))); }

// ---------------------------------------------------------------------------
// Support functions

/// Linear functional m on a cone with <m, v_i> = -d_i on its rays; empty
/// if the cone admits none (D not Q-Cartier there).
inline std::optional<RatVec> cone_support(const Fan& f, const RayIndices& c, const RatVec& d) {
  RatMatrix a(c.size(), f.ambient_rank());
  RatVec b(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < f.ambient_rank(); ++j) a(i, j) = f.rays()[c[i]][j];
    b[i] = -d[c[i]];
  }
  return solve(a, b);
}

/// One functional per maximal cone, in cone order.
inline std::vector<std::optional<RatVec>> support_function(const ToricVariety& x, const TorusDivisor& d) {
  if (d.size() != x.ray_count()) throw InputRejected("divisor length does not match ray count");
  std::vector<std::optional<RatVec>> out;
  for (const auto& c : x.fan().cones()) out.push_back(cone_support(x.fan(), c, d.coefficients));
  return out;
}

inline bool is_q_cartier(const ToricVariety& x, const TorusDivisor& d) {
  for (const auto& m : support_function(x, d))
    if (!m) return false;
  return true;
}

/// Cartier: integral local equations on every maximal cone.
inline bool is_cartier(const ToricVariety& x, const TorusDivisor& d) {
  if (!d.is_integral()) return false;
  const auto& f = x.fan();
  auto di = d.integral();
  for (const auto& c : f.cones()) {
    IntMatrix a(c.size(), f.ambient_rank());
    IntVec b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < f.ambient_rank(); ++j) a(i, j) = f.rays()[c[i]][j];
      b[i] = -di[c[i]];
    }
    if (!integer_solve(a, b)) return false;
  }
  return true;
}

inline bool is_cartier_class(const ToricVariety& x, const RatVec& cls) {
  for (const auto& q : cls)
    if (!is_integral(q)) return false;
  return is_cartier(x, x.representative(cls));
}

/// Basis (columns, Hermite-reduced) of the image of Pic(X) in the free part
/// of Cl(X): classes of divisors with integral local equations on every cone.
inline IntMatrix picard_lattice(const ToricVariety& x) {
  const auto& f = x.fan();
  const std::size_t d = x.ray_count(), n = x.dimension(), nc = f.cones().size();
  std::size_t eqs = 0;
  for (const auto& c : f.cones()) eqs += c.size();
  // unknowns: divisor coefficients, then one character per cone
  IntMatrix a(eqs, d + n * nc);
  std::size_t row = 0;
  for (std::size_t k = 0; k < nc; ++k)
    for (auto i : f.cones()[k]) {
      a(row, i) = 1;
      for (std::size_t j = 0; j < n; ++j) a(row, d + n * k + j) = f.rays()[i][j];
      ++row;
    }
  auto ker = lattice_kernel(a);
  IntMatrix gens(ker.size(), x.class_rank());
  for (std::size_t k = 0; k < ker.size(); ++k) {
    IntVec div(ker[k].begin(), ker[k].begin() + static_cast<long>(d));
    auto c = x.class_map() * div;
    for (std::size_t i = 0; i < c.size(); ++i) gens(k, i) = c[i];
  }
  auto h = hermite_form(gens).H;
  std::size_t r = 0;
  while (r < h.rows() && !is_zero(h.row(r))) ++r;
  IntMatrix basis(x.class_rank(), r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < x.class_rank(); ++i) basis(i, k) = h(k, i);
  return basis;
}

namespace detail {

// Per-wall convexity of the support function; strict selects ampleness.
inline bool wall_convex(const ToricVariety& x, const TorusDivisor& d, bool strict) {
  if (!x.complete()) throw InputRejected("positivity tests need a complete fan");
  auto sf = support_function(x, d);
  for (const auto& m : sf)
    if (!m) throw InputRejected("divisor is not Q-Cartier");
  const auto& f = x.fan();
  std::map<RayIndices, std::vector<std::size_t>> walls;
  for (std::size_t k = 0; k < f.cones().size(); ++k)
    for (auto& w : cone_facet_sets(f, f.cones()[k])) walls[w].push_back(k);
  for (const auto& [w, ks] : walls) {
    if (ks.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const auto& m = *sf[ks[side]];
      for (auto j : f.cones()[ks[1 - side]]) {
        if (std::binary_search(w.begin(), w.end(), j)) continue;
        Rational val = dot(m, f.rays()[j]) + d[j];
        if (val < 0 || (strict && val == 0)) return false;
      }
    }
  }
  return true;
}

} // namespace detail

inline bool is_nef(const ToricVariety& x, const TorusDivisor& d) { return detail::wall_convex(x, d, false); }
inline bool is_ample(const ToricVariety& x, const TorusDivisor& d) { return detail::wall_convex(x, d, true); }

// ---------------------------------------------------------------------------
// Sections

/// P_D = { u : <u, v_i> >= -d_i }.
inline RationalPolytope sections_polytope(const ToricVariety& x, const TorusDivisor& d) {
  if (d.size() != x.ray_count()) throw InputRejected("divisor length does not match ray count");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < x.ray_count(); ++i) hs.push_back({x.fan().rays()[i], d[i]});
  return RationalPolytope::from_halfspaces(x.dimension(), std::move(hs));
}

inline std::size_t h0(const ToricVariety& x, const TorusDivisor& d) { return lattice_points(sections_polytope(x, d)).size(); }

// ---------------------------------------------------------------------------
// Effective cone

/// Cone in Cl(X) tensor Q generated by the ray classes.
inline RationalCone effective_cone(const ToricVariety& x) {
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < x.ray_count(); ++i) gens.push_back(x.ray_class(i).degree);
  return RationalCone(x.class_rank(), gens);
}

inline bool is_effective_class(const ToricVariety& x, const RatVec& cls) { return cone_contains(effective_cone(x), cls); }

/// Equal to the class rank for the complete simplicial inputs accepted by
/// make_variety.
inline std::size_t picard_rank(const ToricVariety& x) { return x.class_rank(); }

} // namespace toricox
