// Batch driver. Inputs are catalog names or JSON files holding a fan (or
// {"fan": ..., "boundary": [...]}). Independent inputs run concurrently;
// output follows input order.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input rejected.

#include <toricox/toricox.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

using namespace toricox;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitRejected = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string mode = "fano";
  std::string delta;
  std::string L;
  std::string json_out;
  std::string off_dir;
  std::string route = "enumeration";
  std::string order = "low";
  long box = 2;
  long cover_radius = 2;
  long l_search_radius = 64;
};

struct Result {
  int code = kExitPass;
  std::string text;
  json report;
};

Mode parse_mode(const std::string& s) {
  if (s == "fano") return Mode::kFano;
  if (s == "cy" || s == "calabi-yau") return Mode::kCalabiYau;
  throw InputRejected("unknown mode '" + s + "' (expected fano or cy)");
}

IntVec parse_int_list(const std::string& s) {
  IntVec v;
  for (const auto& q : parse_rational_list(s)) {
    if (!is_integral(q)) throw InputRejected("'" + s + "' must list integers");
    v.push_back(q.get_num());
  }
  return v;
}

LogPair load_pair(const std::string& input, const std::string& delta) {
  LogPair p;
  bool is_catalog = false;
  for (const auto& e : catalog_entries()) is_catalog = is_catalog || e.name == input;
  if (is_catalog) {
    p = catalog(input);
  } else {
    if (!std::filesystem::exists(input)) throw InputRejected("'" + input + "' is neither a catalog name nor a file");
    auto j = read_json_file(input);
    const json& fj = j.contains("fan") ? j["fan"] : j;
    auto f = fan_from_json(fj);
    auto x = is_complete(f) ? make_variety(f) : ToricVariety::local(f);
    p = j.contains("boundary") ? LogPair(x, TorusDivisor(rat_vec_from_json(j["boundary"]))) : LogPair(x);
  }
  if (delta == "full") return with_full_boundary(p);
  if (!delta.empty()) return LogPair(p.variety, TorusDivisor(parse_rational_list(delta)));
  return p;
}

std::string check_lines(const std::vector<Check>& cs, const std::string& indent) {
  std::ostringstream os;
  for (const auto& c : cs) os << indent << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
  return os.str();
}

std::string describe_chain(const ReductionChain& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    os << "  step " << i + 1 << ": rank Cl " << s.base.variety.class_rank();
    if (s.contraction.pair) os << " -> " << s.xprime().variety.class_rank();
    os << ", L class " << vec_to_string(s.L.cls) << ", a+ = " << to_string(s.a_plus) << ", a- = " << to_string(s.a_minus)
       << ", b = " << to_string(s.b) << '\n';
    os << "    crossings:";
    if (s.walk.crossings.empty()) os << " none";
    for (const auto& w : s.walk.crossings)
      os << " [segment " << w.segment << " at " << to_string(w.position) << ": " << to_string(w.kind) << "]";
    os << '\n' << check_lines(s.checks, "    ");
  }
  os << "  terminal: " << c.terminal.variety.dimension() << "-dimensional, " << c.terminal.variety.ray_count() << " rays\n";
  if (c.terminal_cone) {
    const auto& r = c.terminal_cone->report;
    os << "  cone: L = " << vec_to_string(r.L.integral()) << ", m = " << to_string(r.m) << ", discrepancy of E = "
       << to_string(r.discrepancy_of_E) << ", apex psi = " << to_string(r.apex_log_discrepancy) << ", cone point "
       << to_string(r.cone_singularity.classification) << '\n';
  }
  os << check_lines(c.checks, "  ");
  return os.str();
}

ReduceOptions reduce_options(const Options& o) {
  ReduceOptions r;
  if (!o.L.empty()) r.first_L = parse_int_list(o.L);
  r.cover_radius = o.cover_radius;
  r.l_search_radius = o.l_search_radius;
  return r;
}

// ---------------------------------------------------------------------------
// Subcommands, one input at a time

Result cmd_reduce(const std::string& in, const Options& o) {
  auto p = load_pair(in, o.delta);
  auto chain = reduce(p, parse_mode(o.mode), reduce_options(o));
  Result r;
  r.code = chain.certified() ? kExitPass : kExitCheckFailed;
  r.text = in + ": " + (chain.certified() ? "certified" : "NOT certified") + ", " + std::to_string(chain.steps.size()) + " step(s)\n" +
           describe_chain(chain);
  r.report = to_json(chain);
  return r;
}

Result cmd_verify(const std::string& in, const Options& o) {
  auto p = load_pair(in, o.delta);
  auto rep = verify_theorem(p, parse_mode(o.mode), reduce_options(o));
  Result r;
  r.code = rep.passed() ? kExitPass : kExitCheckFailed;
  r.text = in + " (" + o.mode + "): " + (rep.passed() ? "PASS" : "FAIL") + "\n" + check_lines(rep.checks, "  ");
  r.report = to_json(rep);
  return r;
}

Result cmd_cox(const std::string& in, const Options& o) {
  auto p = load_pair(in, o.delta);
  const auto& x = p.variety;
  if (!x.complete()) throw InputRejected("cox: variety is not complete");
  auto ring = cox_ring(x);
  auto table = hilbert_table(ring, DegreeBox::radius(x.class_rank(), o.box));
  std::ostringstream os;
  os << in << ": Cl rank " << x.class_rank();
  if (!x.torsion().empty()) os << ", torsion " << vec_to_string(x.torsion());
  os << "\n  variable degrees:";
  for (const auto& d : ring.degrees) os << ' ' << vec_to_string(d);
  os << "\n  Hilbert function on the box of radius " << o.box << " (nonzero entries):\n";
  for (const auto& [d, c] : table.entries)
    if (c) os << "    " << degree_key(d) << ": " << c << '\n';
  Result r;
  r.text = os.str();
  r.report = {{"schema_version", kReportSchemaVersion},
              {"class_map", to_json(x.class_map())},
              {"degrees", to_json(ring.degrees)},
              {"box_radius", o.box},
              {"hilbert", to_json(table)}};
  if (!o.L.empty()) {
    // Z/m-cover comparison with the first reduction step for this L
    StepOptions so;
    so.L = parse_int_list(o.L);
    so.cover_radius = 0;
    auto s = reduction_step(p, parse_mode(o.mode), so);
    if (!s.contraction.pair) throw InputRejected("cox: X' could not be built: " + s.contraction.failure);
    auto cc = cyclic_cover_check(x, s.L.cls, s.xprime().variety, s.contraction.origin, o.box);
    bool ok = cc.basis_ok && cc.tables_equal;
    r.code = ok ? kExitPass : kExitCheckFailed;
    r.text += "  cyclic cover: L = " + cc.m.get_str() + " R0, " + std::to_string(cc.degrees_checked) + " degrees, " +
              (ok ? "tables equal" : "tables DIFFER") + (cc.graded_checked ? " (graded check included)" : "") + "\n";
    r.report["cyclic_cover"] = {{"m", to_json(cc.m)},
                                {"basis_ok", cc.basis_ok},
                                {"tables_equal", cc.tables_equal},
                                {"graded_checked", cc.graded_checked},
                                {"xprime", to_json(cc.xprime_table)},
                                {"cover", to_json(cc.cover_table)}};
  }
  return r;
}

Result cmd_classify(const std::string& in, const Options& o) {
  auto p = load_pair(in, o.delta);
  MldRoute route;
  if (o.route == "enumeration") route = MldRoute::kEnumeration;
  else if (o.route == "resolution") route = MldRoute::kResolution;
  else throw InputRejected("unknown route '" + o.route + "'");
  ResolveOrder order;
  if (o.order == "low") order = ResolveOrder::kLowestMultiplicityFirst;
  else if (o.order == "high") order = ResolveOrder::kHighestMultiplicityFirst;
  else throw InputRejected("unknown order '" + o.order + "'");
  auto rep = classify(p, route, order);
  std::ostringstream os;
  os << in << ": " << to_string(rep.classification) << ", mld " << (rep.mld ? to_string(*rep.mld) : std::string("n/a"));
  os << ", gorenstein " << (is_gorenstein(p.variety) ? "yes" : "no") << '\n';
  for (const auto& w : rep.witness) os << "  witness " << vec_to_string(w.valuation) << " psi = " << to_string(w.log_discrepancy) << '\n';
  if (!rep.resolution_rays.empty()) os << "  resolution rays: " << rep.resolution_rays.size() << '\n';
  Result r;
  r.text = os.str();
  r.report = to_json(rep);
  r.report["schema_version"] = kReportSchemaVersion;
  return r;
}

Result cmd_bundle(const std::string& in, const Options& o) {
  auto p = load_pair(in, o.delta);
  const auto& x = p.variety;
  if (o.L.empty()) throw InputRejected("bundle: --L is required");
  auto cls = parse_int_list(o.L);
  if (cls.size() != x.class_rank()) throw InputRejected("bundle: L has the wrong length for Cl(X)");
  auto L = x.representative(to_rational(cls));
  auto b = projectivize(x, L);
  std::vector<Check> checks;
  checks.push_back({"adjunction", check_adjunction(b), "K_Y = pi^*K_X - E0 - Einf"});
  checks.push_back({"boundary_relation", boundary_relation(b), "E0 ~ pi^*L + Einf"});
  auto pb = pullback_basis(b);
  checks.push_back({"pullback_basis", pb.unimodular && pb.consistent, ""});
  if (pb.unimodular && pb.consistent) {
    const std::size_t r = x.class_rank();
    IntVec s = cls, t(r + 1, Integer(0));
    s.push_back(1);
    t[r] = 1;
    auto ext = verify_extension_report(cox_ring_pullback_basis(b), cox_ring(x), s, t, DegreeBox::radius(r + 1, o.box));
    checks.push_back({"cox_extension", ext.ok,
                      std::to_string(ext.degrees_checked) + " degrees" +
                          (ext.first_mismatch ? ", first mismatch at " + degree_key(*ext.first_mismatch) : std::string())});
  }
  Result r;
  bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  r.code = ok ? kExitPass : kExitCheckFailed;
  r.text = in + ": P(O + L) with L = " + vec_to_string(L.integral()) + ", " + std::to_string(b.Y.ray_count()) + " rays\n" +
           check_lines(checks, "  ");
  r.report = to_json(b);
  r.report["schema_version"] = kReportSchemaVersion;
  r.report["checks"] = to_json(checks);
  return r;
}

std::string slug(const std::string& in) {
  std::string s = std::filesystem::path(in).stem().string();
  for (auto& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s;
}

Result cmd_export(const std::string& in, const Options& o) {
  if (o.off_dir.empty()) throw InputRejected("export-polytopes: --off is required");
  auto p = load_pair(in, o.delta);
  const auto& x = p.variety;
  std::filesystem::create_directories(o.off_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const RationalPolytope& poly) {
    if (poly.ambient_rank() < 2 || poly.ambient_rank() > 3 || poly.dimension() != static_cast<long>(poly.ambient_rank())) return;
    auto path = std::filesystem::path(o.off_dir) / (slug(in) + "_" + name + ".off");
    std::ofstream(path) << to_off(poly);
    written.push_back(path.string());
  };
  if (x.complete()) emit("anticanonical", sections_polytope(x, -log_canonical_divisor(p)));
  json steps = json::array();
  if (x.complete() && x.class_rank() > 1) {
    auto chain = reduce(p, parse_mode(o.mode), reduce_options(o));
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      const auto& s = chain.steps[i];
      emit("step" + std::to_string(i + 1) + "_PH", s.contraction.polytope);
      steps.push_back(to_json(s.contraction.polytope));
    }
  }
  Result r;
  r.text = in + ": " + std::to_string(written.size()) + " polytope(s) written\n";
  for (const auto& w : written) r.text += "  " + w + '\n';
  r.report = {{"schema_version", kReportSchemaVersion}, {"files", written}, {"step_polytopes", steps}};
  return r;
}

// Runs `f` on every input concurrently and prints results in input order.
int run_all(const Options& o, const std::function<Result(const std::string&, const Options&)>& f) {
  std::vector<std::future<Result>> jobs;
  for (const auto& in : o.inputs)
    jobs.push_back(std::async(std::launch::async, [&, in] {
      try {
        return f(in, o);
      } catch (const InputRejected& e) {
        return Result{kExitRejected, in + ": rejected: " + e.what() + "\n", {{"input", in}, {"rejected", e.what()}}};
      } catch (const Error& e) {
        return Result{kExitCheckFailed, in + ": failed: " + e.what() + "\n", {{"input", in}, {"error", e.what()}}};
      }
    }));
  int code = kExitPass;
  json all = json::array();
  for (auto& j : jobs) {
    auto r = j.get();
    std::cout << r.text;
    code = std::max(code, r.code);
    all.push_back(r.report);
  }
  if (!o.json_out.empty()) {
    std::ofstream out(o.json_out);
    if (!out) {
      std::cerr << "cannot write '" << o.json_out << "'\n";
      return kExitRejected;
    }
    out << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  }
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric Cox ring, bundle and contraction checks"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s) {
    s->add_option("inputs", o.inputs, "catalog names or JSON fan files")->required();
    s->add_option("--delta", o.delta, "boundary coefficients \"c1,c2,...\" or \"full\"");
    s->add_option("--json", o.json_out, "write the report as JSON");
  };
  auto add_mode = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "fano or cy")->check(CLI::IsMember({"fano", "cy", "calabi-yau"}));
    s->add_option("--L", o.L, "class of L for the first step, \"a,b,...\"");
    s->add_option("--cover-radius", o.cover_radius, "box radius for the cyclic cover check (0 disables)");
    s->add_option("--L-search-radius", o.l_search_radius, "largest shell searched for L");
  };

  std::function<Result(const std::string&, const Options&)> handler;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce the class rank to one and analyse the cone");
  add_common(reduce_cmd);
  add_mode(reduce_cmd);
  reduce_cmd->callback([&] { handler = cmd_reduce; });

  auto* verify_cmd = app.add_subcommand("verify", "run every check of the reduction and the cone");
  add_common(verify_cmd);
  add_mode(verify_cmd);
  verify_cmd->callback([&] { handler = cmd_verify; });

  auto* cox_cmd = app.add_subcommand("cox", "Cox ring grading and Hilbert function");
  add_common(cox_cmd);
  add_mode(cox_cmd);
  cox_cmd->add_option("--box", o.box, "box radius");
  cox_cmd->callback([&] { handler = cmd_cox; });

  auto* classify_cmd = app.add_subcommand("classify", "singularity class and minimal log discrepancy");
  add_common(classify_cmd);
  classify_cmd->add_option("--route", o.route, "enumeration or resolution")->check(CLI::IsMember({"enumeration", "resolution"}));
  classify_cmd->add_option("--order", o.order, "resolution order: low or high")->check(CLI::IsMember({"low", "high"}));
  classify_cmd->callback([&] { handler = cmd_classify; });

  auto* bundle_cmd = app.add_subcommand("bundle", "P(O + L) and its Cox ring");
  add_common(bundle_cmd);
  bundle_cmd->add_option("--L", o.L, "class of L, \"a,b,...\"")->required();
  bundle_cmd->add_option("--box", o.box, "box radius for the Cox ring comparison");
  bundle_cmd->callback([&] { handler = cmd_bundle; });

  auto* export_cmd = app.add_subcommand("export-polytopes", "write OFF files for the polytopes of a reduction");
  add_common(export_cmd);
  add_mode(export_cmd);
  export_cmd->add_option("--off", o.off_dir, "output directory")->required();
  export_cmd->callback([&] { handler = cmd_export; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitRejected;
  }
  return run_all(o, handler);
}
