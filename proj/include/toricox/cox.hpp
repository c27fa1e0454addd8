#pragma once

// Multigraded polynomial rings and their Hilbert functions. A toric Cox
// ring is the polynomial ring on the rays graded by the ray classes.

#include "variety.hpp"

#include <cstdint>
#include <unordered_map>
#include <map>
#include <vector>

namespace toricox {

struct GradedRing {
  std::size_t grading_rank = 0;
  std::vector<IntVec> degrees; // one per variable

  GradedRing() = default;
  GradedRing(std::size_t rank, std::vector<IntVec> degs) : grading_rank(rank), degrees(std::move(degs)) {
    for (const auto& d : degrees)
      if (d.size() != grading_rank) throw InputRejected("variable degree has wrong length");
  }
  std::size_t variable_count() const { return degrees.size(); }

  /// Same ring with degrees mapped by an integer matrix.
  GradedRing regraded(const IntMatrix& g) const {
    if (g.cols() != grading_rank) throw InputRejected("regrading matrix has wrong width");
    std::vector<IntVec> out;
    for (const auto& d : degrees) out.push_back(g * d);
    return GradedRing(g.rows(), std::move(out));
  }

  /// Appends variables of the given degrees; the grading must already have
  /// the right rank.
  GradedRing adjoin(const std::vector<IntVec>& extra) const {
    GradedRing r = *this;
    for (const auto& e : extra) {
      if (e.size() != grading_rank) throw InputRejected("adjoined variable degree has wrong length");
      r.degrees.push_back(e);
    }
    return r;
  }

  /// Embeds the grading group as the first coordinates of a larger one.
  GradedRing extended(std::size_t new_rank) const {
    if (new_rank < grading_rank) throw InputRejected("cannot shrink grading rank");
    std::vector<IntVec> out;
    for (auto d : degrees) {
      d.resize(new_rank, Integer(0));
      out.push_back(std::move(d));
    }
    return GradedRing(new_rank, std::move(out));
  }
};

inline GradedRing cox_ring(const ToricVariety& x) {
  std::vector<IntVec> degs;
  for (std::size_t i = 0; i < x.ray_count(); ++i) degs.push_back(x.ray_class(i).degree);
  return GradedRing(x.class_rank(), std::move(degs));
}

/// Rectangular box of degrees, bounds inclusive.
struct DegreeBox {
  std::vector<long> lo, hi;

  static DegreeBox radius(std::size_t rank, long r) { return {std::vector<long>(rank, -r), std::vector<long>(rank, r)}; }
  std::size_t rank() const { return lo.size(); }

  template <class F>
  void for_each(F&& f) const {
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i)
      if (lo[i] > hi[i]) return;
    std::vector<long> d = lo;
    while (true) {
      f(static_cast<const std::vector<long>&>(d));
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (d[i] < hi[i]) {
          ++d[i];
          for (std::size_t j = i + 1; j < n; ++j) d[j] = lo[j];
          break;
        }
        if (i == 0) return;
      }
      if (n == 0) return;
    }
  }
};

struct HilbertTable {
  std::size_t rank = 0;
  std::map<std::vector<long>, std::uint64_t> entries;
  bool operator==(const HilbertTable&) const = default;
};

/// Counts monomials of a given degree. The cone generated by the variable
/// degrees must be pointed with no zero degree, so every count is finite.
/// Counts are memoized, so one counter should serve many queries.
class HilbertCounter {
public:
  explicit HilbertCounter(const GradedRing& r) : rank_(r.grading_rank) {
    for (const auto& d : r.degrees) {
      if (is_zero(d)) throw InputRejected("hilbert: a variable has degree zero, counts are infinite");
      std::vector<long> v;
      for (const auto& x : d) v.push_back(to_long(x));
      deg_.push_back(std::move(v));
    }
    // H-representations of the cones generated by the first j degrees
    for (std::size_t j = 0; j <= deg_.size(); ++j) {
      RationalCone c(rank_, std::vector<IntVec>(r.degrees.begin(), r.degrees.begin() + j));
      Hrep h;
      for (const auto& f : cone_facets(c.rays, rank_)) h.ineq.push_back(longs(f.normal));
      for (const auto& q : orthogonal_complement(c.rays, rank_)) h.eq.push_back(longs(q));
      if (j == deg_.size() && !deg_.empty() && !is_strongly_convex(c))
        throw InputRejected("hilbert: degree cone is not pointed, counts are infinite");
      cones_.push_back(std::move(h));
    }
  }

  std::uint64_t operator()(const std::vector<long>& d) {
    if (d.size() != rank_) throw InputRejected("hilbert: degree has wrong length");
    return count(d, deg_.size());
  }
  std::uint64_t operator()(const IntVec& d) {
    std::vector<long> v;
    for (const auto& x : d) v.push_back(to_long(x));
    return (*this)(v);
  }

  /// Sum of counts over the whole line d + k e_axis (finite for a pointed
  /// degree cone).
  std::uint64_t line_sum(std::vector<long> d, std::size_t axis, long stride = 1) {
    auto [lo, hi] = line_range(cones_.back(), d, axis, stride);
    std::uint64_t s = 0;
    const long base = d[axis];
    for (long k = lo; k <= hi; ++k) {
      d[axis] = base + k * stride;
      s = add(s, count(d, deg_.size()));
    }
    return s;
  }

private:
  struct Hrep {
    std::vector<std::vector<long>> ineq, eq;
  };

  static std::vector<long> longs(const IntVec& v) {
    std::vector<long> r;
    for (const auto& x : v) r.push_back(to_long(x));
    return r;
  }
  static long dotl(const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("hilbert: count overflows 64 bits");
    return r;
  }
  static long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
  static long ceil_div(long a, long b) { return -floor_div(-a, b); }

  // k-range with d - k g in the cone (g = deg of variable j-1); empty if lo > hi.
  static std::pair<long, long> k_range(const Hrep& h, const std::vector<long>& d, const std::vector<long>& g) {
    long lo = 0, hi = std::numeric_limits<long>::max();
    auto clamp = [&](long a, long b) { // a - k b >= 0
      if (b == 0) {
        if (a < 0) hi = -1;
      } else if (b > 0) {
        hi = std::min(hi, floor_div(a, b));
      } else {
        lo = std::max(lo, ceil_div(-a, -b));
      }
    };
    for (const auto& n : h.ineq) clamp(dotl(n, d), dotl(n, g));
    for (const auto& n : h.eq) {
      long a = dotl(n, d), b = dotl(n, g);
      if (b == 0) {
        if (a != 0) hi = -1;
      } else {
        if (a % b != 0) return {1, 0};
        long k = a / b;
        lo = std::max(lo, k);
        hi = std::min(hi, k);
      }
    }
    if (hi == std::numeric_limits<long>::max() && lo <= hi) throw Error("hilbert: unbounded fibre");
    return {lo, hi};
  }

  // k-range with d + k stride e_axis in the cone (k unrestricted in sign).
  std::pair<long, long> line_range(const Hrep& h, const std::vector<long>& d, std::size_t axis, long stride) const {
    long lo = std::numeric_limits<long>::min(), hi = std::numeric_limits<long>::max();
    for (const auto& n : h.ineq) { // n.d + k stride n_axis >= 0
      long a = dotl(n, d), b = stride * n[axis];
      if (b > 0) lo = std::max(lo, ceil_div(-a, b));
      else if (b < 0) hi = std::min(hi, floor_div(a, -b));
      else if (a < 0) return {1, 0};
    }
    for (const auto& n : h.eq) {
      long a = dotl(n, d), b = stride * n[axis];
      if (b == 0) {
        if (a != 0) return {1, 0};
      } else {
        if (a % b != 0) return {1, 0};
        lo = std::max(lo, -a / b);
        hi = std::min(hi, -a / b);
      }
    }
    if (lo == std::numeric_limits<long>::min() || hi == std::numeric_limits<long>::max())
      throw Error("hilbert: line meets the degree cone in an unbounded set");
    return {lo, hi};
  }

  std::uint64_t count(const std::vector<long>& d, std::size_t j) {
    if (j == 0) return std::all_of(d.begin(), d.end(), [](long x) { return x == 0; }) ? 1 : 0;
    const std::uint64_t key = pack(d, j);
    if (auto it = memo_.find(key); it != memo_.end() && it->second.first == d) return it->second.second;
    const auto& g = deg_[j - 1];
    auto [lo, hi] = k_range(cones_[j - 1], d, g);
    std::uint64_t s = 0;
    std::vector<long> e(d.size());
    for (long k = lo; k <= hi; ++k) {
      for (std::size_t i = 0; i < d.size(); ++i) e[i] = d[i] - k * g[i];
      s = add(s, count(e, j - 1));
    }
    memo_[key] = {d, s};
    return s;
  }

  // Hash key; collisions are detected by storing the degree alongside.
  static std::uint64_t pack(const std::vector<long>& d, std::size_t j) {
    std::uint64_t h = 1469598103934665603ull ^ j;
    for (long x : d) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::size_t rank_;
  std::vector<std::vector<long>> deg_;
  std::vector<Hrep> cones_;
  std::unordered_map<std::uint64_t, std::pair<std::vector<long>, std::uint64_t>> memo_;
};

inline std::uint64_t hilbert(const GradedRing& r, const IntVec& d) { return HilbertCounter(r)(d); }

inline HilbertTable hilbert_table(const GradedRing& r, const DegreeBox& box) {
  if (box.rank() != r.grading_rank) throw InputRejected("hilbert_table: box rank does not match grading rank");
  HilbertCounter h(r);
  HilbertTable t{r.grading_rank, {}};
  box.for_each([&](const std::vector<long>& d) { t.entries[d] = h(d); });
  return t;
}

/// Degrees d in the box with d[axis] divisible by m, reindexed by d[axis]/m:
/// the Hilbert data of the subring fixed by a Z/m acting through that
/// coordinate.
inline HilbertTable invariant_hilbert(const GradedRing& r, std::size_t axis, long m, const DegreeBox& box) {
  if (m <= 0) throw InputRejected("invariant_hilbert: m must be positive");
  if (axis >= r.grading_rank) throw InputRejected("invariant_hilbert: axis out of range");
  if (box.rank() != r.grading_rank) throw InputRejected("invariant_hilbert: box rank does not match grading rank");
  HilbertCounter h(r);
  HilbertTable t{r.grading_rank, {}};
  box.for_each([&](const std::vector<long>& d) {
    if (d[axis] % m != 0) return;
    auto e = d;
    e[axis] /= m;
    t.entries[e] = h(d);
  });
  return t;
}

/// The invariant subring graded only by the coordinates other than `axis`:
/// each entry sums the invariant pieces over the whole axis.
inline HilbertTable cover_hilbert(const GradedRing& r, std::size_t axis, long m, const DegreeBox& box) {
  if (m <= 0) throw InputRejected("cover_hilbert: m must be positive");
  if (axis >= r.grading_rank) throw InputRejected("cover_hilbert: axis out of range");
  if (box.rank() + 1 != r.grading_rank) throw InputRejected("cover_hilbert: box rank must be one less than grading rank");
  HilbertCounter h(r);
  HilbertTable t{box.rank(), {}};
  box.for_each([&](const std::vector<long>& d) {
    std::vector<long> e(d);
    e.insert(e.begin() + static_cast<long>(axis), 0L);
    t.entries[d] = h.line_sum(e, axis, m);
  });
  return t;
}

struct ExtensionCheck {
  bool ok = true;
  std::size_t degrees_checked = 0;
  std::optional<std::vector<long>> first_mismatch;
};

/// Compares the Hilbert function of ry with that of rx[s, t] (rx's grading
/// embedded as the leading coordinates) on every degree of the box.
inline ExtensionCheck verify_extension_report(const GradedRing& ry, const GradedRing& rx, const IntVec& s_degree,
                                              const IntVec& t_degree, const DegreeBox& box) {
  if (ry.grading_rank != rx.grading_rank + 1) throw InputRejected("verify_extension: grading ranks do not differ by one");
  if (box.rank() != ry.grading_rank) throw InputRejected("verify_extension: box rank does not match");
  auto ext = rx.extended(ry.grading_rank).adjoin({s_degree, t_degree});
  HilbertCounter hy(ry), hx(ext);
  ExtensionCheck c;
  box.for_each([&](const std::vector<long>& d) {
    ++c.degrees_checked;
    if (c.ok && hy(d) != hx(d)) {
      c.ok = false;
      c.first_mismatch = d;
    }
  });
  return c;
}

inline bool verify_extension(const GradedRing& ry, const GradedRing& rx, const IntVec& s_degree, const IntVec& t_degree,
                             const DegreeBox& box) {
  return verify_extension_report(ry, rx, s_degree, t_degree, box).ok;
}

} // namespace toricox
