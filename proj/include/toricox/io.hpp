#pragma once

// JSON serialization. Rationals are strings "p/q" (or "p"); integers are
// JSON numbers when they fit in 64 bits and decimal strings otherwise.

#include "pipeline.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace toricox {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}
inline json to_json(const Rational& q) { return to_string(q); }

template <class T>
json to_json(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(std::size_t i) { return i; }

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InputRejected("malformed integer '" + j.get<std::string>() + "'");
    return z;
  }
  throw InputRejected("expected an integer, got " + j.dump());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputRejected("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

inline IntVec int_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputRejected("expected an array, got " + j.dump());
  IntVec v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline RatVec rat_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputRejected("expected an array, got " + j.dump());
  RatVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputRejected("matrix must be an array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(int_vec_from_json(r));
  if (rows.empty()) return IntMatrix(0, 0);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InputRejected("matrix rows have different lengths");
  return IntMatrix::from_rows(rows);
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

// ---------------------------------------------------------------------------
// Fans

inline json to_json(const Fan& f) {
  json j;
  j["rank"] = f.ambient_rank();
  j["rays"] = to_json(f.rays());
  json cones = json::array();
  for (const auto& c : f.cones()) cones.push_back(c);
  j["cones"] = cones;
  return j;
}

inline Fan fan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays") || !j.contains("cones"))
    throw InputRejected("fan JSON needs \"rank\", \"rays\" and \"cones\"");
  if (!j["rank"].is_number_unsigned()) throw InputRejected("fan rank must be a nonnegative integer");
  std::vector<IntVec> rays;
  for (const auto& r : j["rays"]) rays.push_back(int_vec_from_json(r));
  std::vector<RayIndices> cones;
  for (const auto& c : j["cones"]) {
    RayIndices idx;
    for (const auto& i : c) {
      if (!i.is_number_unsigned()) throw InputRejected("cone entries must be ray indices");
      idx.push_back(i.get<std::size_t>());
    }
    cones.push_back(idx);
  }
  return Fan(j["rank"].get<std::size_t>(), rays, cones, true);
}

// ---------------------------------------------------------------------------
// Polytopes and Hilbert tables

inline json to_json(const RationalPolytope& p) {
  json j;
  j["rank"] = p.ambient_rank();
  j["vertices"] = to_json(p.vertices());
  json hs = json::array();
  for (const auto& h : p.halfspaces()) hs.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
  j["halfspaces"] = hs;
  return j;
}

/// Accepts {"rank", "vertices"} or {"rank", "halfspaces"}.
inline RationalPolytope polytope_from_json(const json& j) {
  if (!j.contains("rank")) throw InputRejected("polytope JSON needs \"rank\"");
  auto rank = j["rank"].get<std::size_t>();
  if (j.contains("vertices")) {
    std::vector<RatVec> pts;
    for (const auto& v : j["vertices"]) pts.push_back(rat_vec_from_json(v));
    return RationalPolytope::from_vertices(rank, pts);
  }
  if (j.contains("halfspaces")) {
    std::vector<Halfspace> hs;
    for (const auto& h : j["halfspaces"]) hs.push_back({int_vec_from_json(h.at("normal")), rational_from_json(h.at("offset"))});
    return RationalPolytope::from_halfspaces(rank, hs);
  }
  throw InputRejected("polytope JSON needs \"vertices\" or \"halfspaces\"");
}

inline std::string degree_key(const std::vector<long>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

inline json to_json(const HilbertTable& t) {
  json j = json::object();
  for (const auto& [d, c] : t.entries) j[degree_key(d)] = c;
  return j;
}

inline HilbertTable hilbert_table_from_json(const json& j, std::size_t rank) {
  HilbertTable t{rank, {}};
  for (const auto& [k, v] : j.items()) {
    std::vector<long> d;
    for (const auto& q : parse_rational_list(k)) {
      if (!is_integral(q)) throw InputRejected("hilbert key '" + k + "' is not integral");
      d.push_back(to_long(q.get_num()));
    }
    if (d.size() != rank) throw InputRejected("hilbert key '" + k + "' has wrong length");
    t.entries[d] = v.get<std::uint64_t>();
  }
  return t;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const PairReport& r) {
  json j;
  j["classification"] = to_string(r.classification);
  j["mld"] = r.mld ? json(to_string(*r.mld)) : json(nullptr);
  json w = json::array();
  for (const auto& x : r.witness) w.push_back({{"valuation", to_json(x.valuation)}, {"log_discrepancy", to_json(x.log_discrepancy)}});
  j["witness"] = w;
  j["resolution_rays"] = to_json(r.resolution_rays);
  return j;
}

inline json to_json(const LogPair& p) {
  json j;
  j["fan"] = to_json(p.variety.fan());
  j["boundary"] = to_json(p.boundary.coefficients);
  j["class_map"] = to_json(p.variety.class_map());
  return j;
}

inline json to_json(const ConeReport& r) {
  return {{"m", to_json(r.m)},
          {"discrepancy_of_E", to_json(r.discrepancy_of_E)},
          {"apex_log_discrepancy", to_json(r.apex_log_discrepancy)},
          {"L", to_json(r.L.coefficients)},
          {"singularity", to_json(r.cone_singularity)}};
}

inline json to_json(const Check& c) { return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}; }

inline json to_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

inline json to_json(const BundleData& b) {
  json j;
  j["fan"] = to_json(b.Y.fan());
  j["e0_ray"] = b.e0_ray;
  j["einf_ray"] = b.einf_ray;
  j["L"] = to_json(b.L.coefficients);
  j["class_map"] = to_json(b.Y.class_map());
  return j;
}

inline json to_json(const WallCrossing& c) {
  return {{"segment", c.segment},
          {"position", to_json(c.position)},
          {"kind", to_string(c.kind)},
          {"contracted_locus_dim", c.contracted_locus_dim},
          {"before", to_json(c.before)},
          {"after", to_json(c.after)}};
}

inline json to_json(const ReductionStep& s) {
  json j;
  j["base"] = to_json(s.base);
  j["L_class"] = to_json(s.L.cls);
  j["L"] = to_json(s.L.L.coefficients);
  j["A"] = to_json(s.A.coefficients);
  j["a_plus"] = to_json(s.a_plus);
  j["a_minus"] = to_json(s.a_minus);
  j["b"] = to_json(s.b);
  j["bundle"] = to_json(s.Y);
  json cr = json::array();
  for (const auto& c : s.walk.crossings) cr.push_back(to_json(c));
  j["crossings"] = cr;
  j["xprime_fan"] = to_json(s.contraction.fan);
  j["proj_degree"] = to_json(s.contraction.n);
  if (s.contraction.pair) j["xprime"] = to_json(*s.contraction.pair);
  j["checks"] = to_json(s.checks);
  j["certified"] = s.certified();
  return j;
}

inline json to_json(const ReductionChain& c) {
  json j;
  j["mode"] = to_string(c.mode);
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  j["steps"] = steps;
  j["terminal"] = to_json(c.terminal);
  if (c.terminal_cone) {
    j["terminal_cone"] = to_json(c.terminal_cone->report);
    j["terminal_cone_fan"] = to_json(c.terminal_cone->fan);
  }
  j["checks"] = to_json(c.checks);
  j["certified"] = c.certified();
  return j;
}

inline json to_json(const TheoremReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = to_string(r.mode);
  j["passed"] = r.passed();
  j["checks"] = to_json(r.checks);
  j["chain"] = to_json(r.chain);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputRejected("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputRejected("'" + path + "' is not valid JSON: " + e.what());
  }
}

} // namespace toricox
