#pragma once

// End-to-end driver: reduce the class rank one step at a time until it is
// one, then analyse the affine cone over what is left.

#include "mmp.hpp"

#include <map>
#include <string>
#include <vector>

namespace toricox {

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  std::string name;
  std::string description;
  std::size_t rank;
  std::vector<std::vector<long>> rays;
  std::vector<RayIndices> cones;
  bool complete = true;
};

namespace detail {

inline std::vector<RayIndices> cyclic_cones(std::size_t n) {
  std::vector<RayIndices> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back({i, (i + 1) % n});
  return c;
}

} // namespace detail

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"p1", "projective line", 1, {{1}, {-1}}, {{0}, {1}}},
      {"p2", "projective plane", 2, {{1, 0}, {0, 1}, {-1, -1}}, detail::cyclic_cones(3)},
      {"p1xp1", "product of two projective lines", 2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}},
      {"f1", "Hirzebruch surface F1, the blowup of P2 in a point", 2, {{1, 0}, {1, 1}, {0, 1}, {-1, -1}}, detail::cyclic_cones(4)},
      {"f2", "Hirzebruch surface F2", 2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, detail::cyclic_cones(4)},
      {"dp7", "blowup of P2 in two torus-fixed points", 2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}}, detail::cyclic_cones(5)},
      {"dp6", "blowup of P2 in three torus-fixed points", 2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}, detail::cyclic_cones(6)},
      {"p3", "projective 3-space", 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
       {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}},
      {"quadric-cone", "affine quadric cone (A1 singularity)", 2, {{1, 0}, {1, 2}}, {{0, 1}}, false},
  };
  return entries;
}

inline Fan catalog_fan(const std::string& name) {
  for (const auto& e : catalog_entries()) {
    if (e.name != name) continue;
    std::vector<IntVec> rays;
    for (const auto& r : e.rays) {
      IntVec v;
      for (long x : r) v.emplace_back(x);
      rays.push_back(v);
    }
    return Fan(e.rank, rays, e.cones, true);
  }
  throw InputRejected("unknown catalog entry '" + name + "'");
}

/// Catalog entry as a pair with empty boundary; complete entries go
/// through make_variety, the rest are local.
inline LogPair catalog(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) {
      auto f = catalog_fan(name);
      return LogPair(e.complete ? make_variety(f) : ToricVariety::local(f));
    }
  throw InputRejected("unknown catalog entry '" + name + "'");
}

/// The pair with every torus-invariant divisor at coefficient one.
inline LogPair with_full_boundary(const LogPair& p) {
  return LogPair(p.variety, TorusDivisor(RatVec(p.variety.ray_count(), Rational(1))));
}

// ---------------------------------------------------------------------------
// Reduction

struct ReductionChain {
  Mode mode = Mode::kFano;
  std::vector<ReductionStep> steps;
  LogPair terminal;
  std::optional<AffineCone> terminal_cone;
  std::vector<Check> checks; // precondition and terminal checks
  bool certified() const {
    for (const auto& s : steps)
      if (!s.certified()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

struct ReduceOptions {
  std::optional<IntVec> first_L; // override select_L for the first step
  long l_search_radius = 64;
  long cover_radius = 2;
};

inline void require_mode(const LogPair& p, Mode mode) {
  const auto& x = p.variety;
  if (!x.complete()) throw InputRejected("reduce: variety is not complete");
  auto rep = classify(p);
  if (mode == Mode::kFano) {
    if (!at_least(rep.classification, Singularity::kKlt))
      throw InputRejected(std::string("reduce: pair is ") + to_string(rep.classification) + ", not klt");
    if (!is_ample(x, -log_canonical_divisor(p))) throw InputRejected("reduce: -(K + boundary) is not ample");
  } else {
    if (!at_least(rep.classification, Singularity::kLc))
      throw InputRejected(std::string("reduce: pair is ") + to_string(rep.classification) + ", not lc");
    if (!is_zero(x.rational_class(log_canonical_divisor(p)))) throw InputRejected("reduce: K + boundary is not trivial");
  }
}

/// Positive generator of a rank-one class group, as a torus divisor.
inline TorusDivisor class_generator(const ToricVariety& x) {
  if (x.class_rank() != 1) throw InputRejected("class_generator: class rank is not 1");
  return x.representative(RatVec{Rational(1)});
}

/// Reduces until the class rank is one. Steps that fail certification stop
/// the chain; the failing step is kept so its checks can be reported.
inline ReductionChain reduce(const LogPair& start, Mode mode, const ReduceOptions& opt = {}) {
  require_mode(start, mode);
  ReductionChain chain;
  chain.mode = mode;
  LogPair cur = start;
  while (cur.variety.class_rank() > 1) {
    StepOptions so;
    if (chain.steps.empty()) so.L = opt.first_L;
    so.l_search_radius = opt.l_search_radius;
    so.cover_radius = opt.cover_radius;
    try {
      chain.steps.push_back(reduction_step(cur, mode, so));
    } catch (const Error& e) {
      // the input passed its preconditions, so a step that cannot be built
      // is a failed certificate rather than a rejected input
      chain.checks.push_back({"step" + std::to_string(chain.steps.size() + 1) + "_constructed", false, e.what()});
      chain.terminal = cur;
      return chain;
    }
    const auto& s = chain.steps.back();
    if (!s.certified()) {
      chain.terminal = cur;
      return chain;
    }
    cur = s.xprime();
  }
  chain.terminal = cur;
  auto L = class_generator(cur.variety);
  chain.terminal_cone = affine_cone(cur, L);
  const auto& rep = chain.terminal_cone->report;
  chain.checks.push_back({"cone_discrepancy_consistent", rep.apex_log_discrepancy - 1 == rep.discrepancy_of_E,
                          "m - 1 = " + to_string(rep.discrepancy_of_E) + ", psi(apex) - 1 = " + to_string(rep.apex_log_discrepancy - 1)});
  auto cls = rep.cone_singularity.classification;
  if (mode == Mode::kFano)
    chain.checks.push_back({"cone_klt", rep.m > 0 && at_least(cls, Singularity::kKlt),
                            "m = " + to_string(rep.m) + ", cone point is " + to_string(cls)});
  else
    chain.checks.push_back({"cone_lc", rep.m >= 0 && at_least(cls, Singularity::kLc),
                            "m = " + to_string(rep.m) + ", cone point is " + to_string(cls)});
  return chain;
}

// ---------------------------------------------------------------------------
// Theorem verification

struct TheoremReport {
  Mode mode = Mode::kFano;
  ReductionChain chain;
  std::vector<Check> checks; // aggregated, step checks prefixed with their index
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline TheoremReport verify_theorem(const LogPair& p, Mode mode, const ReduceOptions& opt = {}) {
  TheoremReport r;
  r.mode = mode;
  r.chain = reduce(p, mode, opt);
  for (std::size_t i = 0; i < r.chain.steps.size(); ++i)
    for (const auto& c : r.chain.steps[i].checks)
      r.checks.push_back({"step" + std::to_string(i + 1) + "." + c.name, c.passed, c.detail});
  for (const auto& c : r.chain.checks) r.checks.push_back(c);
  if (!r.chain.terminal_cone) {
    r.checks.push_back({"chain_complete", false, "a step failed certification"});
    return r;
  }
  r.checks.push_back({"cox_ring_normal", true, "toric Cox rings are polynomial rings"});
  const bool smooth_fano = mode == Mode::kFano && is_smooth(p.variety.fan()) && is_zero(p.boundary.coefficients);
  if (smooth_fano) {
    const auto& rep = r.chain.terminal_cone->report;
    r.checks.push_back({"gorenstein_canonical", rep.m >= 1 && is_gorenstein(p.variety),
                        "m = " + to_string(rep.m) + " so the exceptional discrepancy m - 1 is nonnegative"});
  }
  return r;
}

} // namespace toricox
