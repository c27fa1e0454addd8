// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <toricox/toricox.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace toricox;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(Clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool pass = o.ok && in_time;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << o.detail;
  line.precision(3);
  line << std::fixed << " (" << s << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s";
  line << ")";
  std::cout << line.str() << std::endl;
  return pass;
}

TorusDivisor D(std::initializer_list<long> xs) { return TorusDivisor(rat_vec(xs)); }

// ---------------------------------------------------------------------------

Outcome quadric_to_p3() {
  auto p = catalog("p1xp1");
  ReduceOptions opt;
  opt.first_L = p.variety.class_of(D({1, 0, -1, 0})).degree;
  auto chain = reduce(p, Mode::kFano, opt);
  if (chain.steps.size() != 1 || !chain.certified()) return {false, "chain did not certify in one step"};
  const auto& f = chain.steps[0].contraction.fan;
  IntVec sum(f.ambient_rank(), Integer(0));
  for (const auto& r : f.rays()) sum = sum + r;
  bool unimodular = true;
  for (const auto& c : f.cones()) unimodular = unimodular && abs(determinant(IntMatrix::from_rows(f.ray_vectors(c)))) == 1;
  bool ok = f.ray_count() == 4 && f.ambient_rank() == 3 && is_zero(sum) && unimodular && f.cones().size() == 4;
  return {ok, std::to_string(f.ray_count()) + " rays in rank " + std::to_string(f.ambient_rank()) + ", sum " + vec_to_string(sum) +
                  (unimodular ? ", all cones unimodular" : ", non-unimodular cone")};
}

Outcome f1_walk() {
  auto p = catalog("f1");
  StepOptions so;
  so.L = p.variety.class_of(D({0, 2, 0, -1})).degree; // 2E - H
  auto s = reduction_step(p, Mode::kFano, so);
  const auto& cr = s.walk.crossings;
  if (cr.empty()) return {false, "no crossings"};
  bool flip_first = cr.front().kind == WallCrossing::kFlip;
  std::size_t divisorial = 0;
  for (std::size_t i = 1; i < cr.size(); ++i) divisorial += cr[i].kind == WallCrossing::kDivisorial;
  bool rest_divisorial = divisorial + 1 == cr.size();
  // both boundary sections are gone from X'
  bool contracted = true;
  for (auto o : s.contraction.origin) contracted = contracted && o != s.Y.e0_ray && o != s.Y.einf_ray;
  if (!s.contraction.pair) return {false, "X' not constructed: " + s.contraction.failure};
  const auto& xp = s.xprime();
  bool rho1 = xp.variety.class_rank() == 1;
  bool klt = at_least(classify(xp).classification, Singularity::kKlt);
  bool ample = is_ample(xp.variety, -log_canonical_divisor(xp));
  std::string kinds;
  for (const auto& c : cr) kinds += std::string(kinds.empty() ? "" : ",") + to_string(c.kind);
  return {flip_first && rest_divisorial && contracted && rho1 && klt && ample && s.certified(),
          "crossings [" + kinds + "], E0/Einf contracted: " + (contracted ? "yes" : "no") + ", rho(X') = " +
              std::to_string(xp.variety.class_rank()) + (klt ? ", klt" : ", not klt") + (ample ? ", -K ample" : ", -K not ample")};
}

Outcome extension_on_del_pezzos() {
  std::size_t pairs = 0, degrees = 0, failures = 0;
  std::string first_bad;
  for (const char* name : {"p2", "p1xp1", "f1", "dp7", "dp6"}) {
    auto x = make_variety(catalog_fan(name));
    auto rx = cox_ring(x);
    const std::size_t r = x.class_rank();
    DegreeBox::radius(r, 2).for_each([&](const std::vector<long>& c) {
      RatVec cls(c.begin(), c.end());
      if (is_effective_class(x, cls) || is_effective_class(x, -cls)) return;
      if (!is_cartier_class(x, cls)) return;
      auto L = x.representative(cls);
      auto b = projectivize(x, L);
      auto ry = cox_ring_pullback_basis(b);
      IntVec s(c.begin(), c.end()), t(r + 1, Integer(0));
      s.push_back(1);
      t[r] = 1;
      auto rep = verify_extension_report(ry, rx, s, t, DegreeBox::radius(r + 1, 3));
      ++pairs;
      degrees += rep.degrees_checked;
      if (!rep.ok) {
        ++failures;
        if (first_bad.empty()) first_bad = std::string(name) + " L=" + vec_to_string(s);
      }
    });
  }
  return {failures == 0 && pairs > 0, std::to_string(pairs) + " (X, L) pairs, " + std::to_string(degrees) + " degrees, " +
                                          std::to_string(failures) + " mismatches" + (first_bad.empty() ? "" : " (first: " + first_bad + ")")};
}

Outcome invariant_tables() {
  std::string detail;
  bool ok = true;
  auto check = [&](const std::string& name, const LogPair& p, std::optional<IntVec> L) {
    ReduceOptions opt;
    opt.first_L = L;
    auto chain = reduce(p, Mode::kFano, opt);
    if (!chain.certified()) {
      ok = false;
      detail += name + ": chain not certified; ";
      return;
    }
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      const auto& s = chain.steps[i];
      auto cc = cyclic_cover_check(s.base.variety, s.L.cls, s.xprime().variety, s.contraction.origin, 4);
      bool step_ok = cc.basis_ok && cc.tables_equal && cc.graded_checked;
      ok = ok && step_ok;
      detail += name + " step " + std::to_string(i + 1) + ": L = " + cc.m.get_str() + " R0, " + std::to_string(cc.degrees_checked) +
                " degrees " + (step_ok ? "equal" : "DIFFER") + "; ";
    }
  };
  auto q = catalog("p1xp1");
  check("p1xp1", q, q.variety.class_of(D({1, 0, -1, 0})).degree);
  check("f1", catalog("f1"), std::nullopt);
  return {ok, detail};
}

Outcome cone_discrepancies() {
  struct Case {
    const char* name;
    TorusDivisor L;
    long expect;
  };
  std::vector<Case> cases{{"p2", D({1, 0, 0}), 2}, {"p1", D({2, 0}), 0}, {"p3", D({1, 0, 0, 0}), 3}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    auto rep = affine_cone(catalog(c.name), c.L).report;
    bool match = rep.discrepancy_of_E == c.expect && rep.apex_log_discrepancy - 1 == rep.discrepancy_of_E;
    ok = ok && match;
    detail += std::string(c.name) + ": m-1 = " + to_string(rep.discrepancy_of_E) + ", psi(apex)-1 = " +
              to_string(rep.apex_log_discrepancy - 1) + "; ";
  }
  return {ok, detail};
}

// Random complete simplicial fans: polygons in rank 2, stellar subdivisions
// of P3 in rank 3.
Fan random_fan(std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (coin(rng) < 2) {
    std::uniform_int_distribution<long> c(-3, 3), n(3, 6);
    while (true) {
      std::set<IntVec> pick;
      for (long i = 0, k = n(rng); i < k; ++i) {
        IntVec v{Integer(c(rng)), Integer(c(rng))};
        if (!is_zero(v)) pick.insert(primitive_of(v));
      }
      std::vector<IntVec> rays(pick.begin(), pick.end());
      std::sort(rays.begin(), rays.end(), [](const IntVec& a, const IntVec& b) {
        return std::atan2(a[1].get_d(), a[0].get_d()) < std::atan2(b[1].get_d(), b[0].get_d());
      });
      if (rays.size() < 3) continue;
      std::vector<RayIndices> cones;
      bool ok = true;
      for (std::size_t i = 0; i < rays.size(); ++i) {
        const auto& a = rays[i];
        const auto& b = rays[(i + 1) % rays.size()];
        if (a[0] * b[1] - a[1] * b[0] <= 0) ok = false; // consecutive rays must turn by less than pi
        cones.push_back({i, (i + 1) % rays.size()});
      }
      if (!ok) continue;
      try {
        return Fan(2, rays, cones, true);
      } catch (const InputRejected&) {
      }
    }
  }
  std::uniform_int_distribution<long> c(-2, 2), k(0, 2);
  Fan f = catalog_fan("p3");
  for (long i = 0, n = k(rng); i < n;) {
    IntVec v{Integer(c(rng)), Integer(c(rng)), Integer(c(rng))};
    if (is_zero(v)) continue;
    v = primitive_of(v);
    if (f.ray_index(v)) continue;
    f = stellar_subdivide(f, v);
    ++i;
  }
  return f;
}

Outcome random_bundles() {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::size_t done = 0, failures = 0;
  std::string first_bad;
  while (done < 200) {
    auto x = make_variety(random_fan(rng), true);
    Integer m = 1;
    for (const auto& c : x.fan().cones()) m = lcm(m, multiplicity(x.fan().ray_vectors(c), x.dimension()));
    TorusDivisor L = TorusDivisor::zero(x.ray_count());
    for (std::size_t i = 0; i < x.ray_count(); ++i) L[i] = Rational(m * coef(rng));
    if (!is_cartier(x, L)) return {false, "m D_i was not Cartier on a random fan"};
    auto b = projectivize(x, L);
    bool ok = check_adjunction(b) && boundary_relation(b);
    if (!ok) {
      ++failures;
      if (first_bad.empty()) first_bad = vec_to_string(L.integral());
    }
    ++done;
  }
  return {failures == 0, std::to_string(done) + " random pairs, " + std::to_string(failures) + " failures" +
                             (first_bad.empty() ? "" : " (first L = " + first_bad + ")")};
}

Outcome resolution_independence() {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> c(-4, 4), dim(2, 3), num(0, 3);
  std::size_t done = 0, mismatches = 0;
  std::string detail;
  while (done < 50) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    std::vector<IntVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec v;
      for (std::size_t j = 0; j < n; ++j) v.push_back(Integer(c(rng)));
      rays.push_back(v);
    }
    LogPair p;
    try {
      IntMatrix m = IntMatrix::from_rows(rays);
      Integer det = abs(determinant(m));
      if (det < 2 || det > 30) continue;
      RayIndices all(n);
      std::iota(all.begin(), all.end(), 0);
      auto x = ToricVariety::local(Fan(n, rays, {all}, true));
      RatVec d(n);
      for (auto& q : d) q = make_rational(num(rng), 4); // boundary coefficients in {0, 1/4, 1/2, 3/4}
      p = LogPair(x, TorusDivisor(d));
    } catch (const InputRejected&) {
      continue;
    }
    auto a = classify(p, MldRoute::kResolution, ResolveOrder::kLowestMultiplicityFirst);
    auto b = classify(p, MldRoute::kResolution, ResolveOrder::kHighestMultiplicityFirst);
    if (a.classification != b.classification || a.mld != b.mld) ++mismatches;
    ++done;
  }
  return {mismatches == 0, std::to_string(done) + " random simplicial cones of rank <= 3, " + std::to_string(mismatches) + " disagreements"};
}

Outcome calabi_yau() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"p2", "p1xp1"}) {
    auto p = with_full_boundary(catalog(name));
    auto r = verify_theorem(p, Mode::kCalabiYau);
    bool trivial = is_zero(p.variety.rational_class(log_canonical_divisor(p)));
    std::size_t lc_checks = 0;
    for (const auto& s : r.chain.steps) {
      trivial = trivial && is_zero(s.xprime().variety.rational_class(log_canonical_divisor(s.xprime())));
      for (const auto& c : s.checks) lc_checks += (c.name == "lc" || c.name == "bundle_pair_log_cy") && c.passed;
    }
    bool cone_lc = false;
    for (const auto& c : r.chain.checks) cone_lc = cone_lc || (c.name == "cone_lc" && c.passed);
    bool pass = r.passed() && trivial && cone_lc && lc_checks == 2 * r.chain.steps.size();
    ok = ok && pass;
    detail += std::string(name) + ": " + std::to_string(r.chain.steps.size()) + " step(s), " + std::to_string(lc_checks) +
              " lc certificates, K + boundary " + (trivial ? "= 0" : "!= 0") + ", m = " +
              (r.chain.terminal_cone ? to_string(r.chain.terminal_cone->report.m) : std::string("?")) + "; ";
  }
  return {ok, detail};
}

} // namespace

int main() {
  std::cout << std::unitbuf;
  bool all = true;
  all &= run(1, "P1xP1 with L = (1,-1) reduces to P3", 1.0, quadric_to_p3);
  all &= run(2, "F1 with L = 2E - H: flip, then both sections contracted", 2.0, f1_walk);
  all &= run(3, "Cox(Y) = Cox(X)[s,t] on smooth del Pezzo surfaces", 60.0, extension_on_del_pezzos);
  all &= run(4, "invariant Hilbert tables of Cox(X) match Cox(X')", 0, invariant_tables);
  all &= run(5, "affine cone discrepancies", 0, cone_discrepancies);
  all &= run(6, "adjunction and boundary relation on random bundles", 0, random_bundles);
  all &= run(7, "resolution independence of classification and mld", 0, resolution_independence);
  all &= run(8, "log Calabi-Yau mode with full boundary", 0, calabi_yau);
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
  return all ? 0 : 1;
}
