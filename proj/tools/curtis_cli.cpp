#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curtis/errors.hpp"
#include "curtis/finite.hpp"
#include "curtis/frob.hpp"
#include "curtis/serialize.hpp"
#include "curtis/weil.hpp"
#include "suites.hpp"

using nlohmann::ordered_json;
using namespace curtis;
using namespace curtis::cli;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

ordered_json config_json(const SessionConfig& c) {
  return ordered_json{{"ell", c.ell},
                      {"q", c.q},
                      {"n", c.n},
                      {"mode", c.mode},
                      {"conductor", c.conductor},
                      {"value_modulus", c.value_modulus},
                      {"window", c.window},
                      {"samples", c.samples},
                      {"seed", c.seed},
                      {"r", c.r},
                      {"exhaustive", c.exhaustive}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text << "\n";
}

int cmd_verify(const std::string& suite, const SessionConfig& cfg, const std::string& json_path) {
  const auto checks = build_suite(suite, cfg);
  const auto results = run_checks(checks, cfg);
  bool ok = true;
  ordered_json report{{"schema_version", kSchemaVersion}, {"suite", suite}, {"config", config_json(cfg)}};
  ordered_json arr = ordered_json::array();
  std::cout << "suite " << suite << "  (ell=" << cfg.ell << ", q=" << cfg.q << ", n=" << cfg.n << ", mode=" << cfg.mode
            << ", seed=" << cfg.seed << ")\n";
  for (const auto& r : results) {
    if (r.outcome.status == Status::fail) ok = false;
    std::cout << "  [" << std::left << std::setw(7) << status_name(r.outcome.status) << "] " << std::setw(10) << r.suite
              << std::setw(24) << r.name << " " << r.outcome.detail;
    if (!r.outcome.witness.empty()) std::cout << "\n            witness: " << r.outcome.witness;
    std::cout << "\n            anchor: " << r.anchor;
    if (cfg.timings) std::cout << "  (" << std::fixed << std::setprecision(1) << r.millis << " ms)";
    std::cout << "\n";
    ordered_json j{{"key", r.key},
                   {"suite", r.suite},
                   {"name", r.name},
                   {"anchor", r.anchor},
                   {"status", status_name(r.outcome.status)},
                   {"detail", r.outcome.detail},
                   {"witness", r.outcome.witness}};
    if (cfg.timings) j["time_ms"] = r.millis;
    arr.push_back(j);
  }
  report["checks"] = arr;
  report["result"] = ok ? "pass" : "fail";
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  if (!json_path.empty()) write_output(json_path, report.dump(2));
  return ok ? kExitPass : kExitFail;
}

ordered_json orbit_json(const FqOrbit& o) { return ordered_json{{"num", o.num}, {"den", o.den}, {"size", o.size}}; }

int cmd_enumerate(const std::string& object, const SessionConfig& cfg, const std::string& json_path) {
  ordered_json out{{"schema_version", kSchemaVersion}, {"object", object}, {"config", config_json(cfg)}};
  ordered_json rows = ordered_json::array();
  if (object == "ss-classes") {
    for (const auto& s : enumerate_ss_classes(cfg.q, cfg.n)) {
      ordered_json orbits = ordered_json::array();
      for (const auto& o : s.orbits) orbits.push_back(orbit_json(o));
      rows.push_back(ordered_json{{"class", s.to_string()}, {"orbits", orbits}, {"ell_regular", s.is_ell_regular(cfg.ell)}});
    }
  } else if (object == "ssreps") {
    for (const auto& rho : enumerate_ssreps(*cfg.params(), cfg.n, cfg.value_modulus)) {
      rows.push_back(ordered_json{{"rep", rho.to_string()}, {"dim", rho.dim()}});
    }
  } else if (object == "points") {
    const auto pts = enumerate_points(cfg.r, cfg.n, cfg.q, cfg.exhaustive, cfg.samples, cfg.seed);
    std::size_t in0 = 0;
    for (const auto& p : pts.points) in0 += in_identity_component(p, cfg.ell, cfg.q);
    rows.push_back(ordered_json{{"r", cfg.r},
                                {"n", cfg.n},
                                {"q", cfg.q},
                                {"ell", cfg.ell},
                                {"exhaustive", pts.exhaustive},
                                {"tried", pts.tried},
                                {"count", pts.count},
                                {"in_identity_component", in0}});
  } else if (object == "relevant-partitions") {
    const auto p = cfg.params();
    for (const auto& nu : relevant_partitions(*p, cfg.n)) rows.push_back(nu);
    out["nu_max"] = nu_max(*p, cfg.n);
  } else {
    throw DomainError("unknown object '" + object + "'");
  }
  out["rows"] = rows;
  write_output(json_path, out.dump(2));
  return kExitPass;
}

int cmd_export(const std::string& element, const SessionConfig& cfg, const std::string& word, int index,
               const std::string& json_path) {
  const auto p = cfg.params();
  const ModeConfig mode = cfg.mode_config();
  std::string text;
  if (element == "trace" || element == "unitQ" || element == "embed") {
    CoherentTuple t = CoherentTuple::zero(p, cfg.n, mode);
    if (element == "trace") {
      const Word w = Word::parse(word);
      const bool normal = w.letters.size() <= 1 || (w.letters.size() == 2 && w.letters[0].first == 's');
      if (normal) {
        std::int64_t e = 0, f = 0;
        for (const auto& [c, k] : w.letters) (c == 's' ? e : f) = k;
        t = trace_tuple(p, cfg.n, e, f, mode);
      } else {
        t = invariant_to_A(InvariantFn::trace(w), p, cfg.n, mode);
      }
    } else if (element == "unitQ") {
      t = unit_Q(p, cfg.n, mode);
    } else {
      const FiniteBasis b = coherent_basis(cfg.q, cfg.n);
      const auto e1 = idempotent_tuple(cfg.q, cfg.n, cfg.ell, SSClass{std::vector<FqOrbit>(cfg.n)});
      if (index < 0 || index >= static_cast<int>(b.basis.size())) throw DomainError("--index out of range");
      t = embed_into_A(e1 * b.basis[index], p, mode);
    }
    auto j = ordered_json::parse(tuple_to_json(t));
    const auto cert = is_coherent(t);
    j["certificate"] = ordered_json{{"coherent", cert.coherent}, {"failure", cert.failure}};
    text = j.dump(2);
  } else if (element == "idempotent") {
    const auto classes = ell_regular_classes(cfg.q, cfg.n, cfg.ell);
    if (index < 0 || index >= static_cast<int>(classes.size())) throw DomainError("--index out of range");
    const auto e = idempotent_tuple(cfg.q, cfg.n, cfg.ell, classes[index]);
    auto j = ordered_json::parse(finite_tuple_to_json(e));
    j["class"] = classes[index].to_string();
    j["certificate"] = ordered_json{{"coherent", is_coherent_finite(e).coherent}};
    text = j.dump(2);
  } else {
    throw DomainError("unknown element '" + element + "'");
  }
  write_output(json_path, text);
  return kExitPass;
}

int cmd_import(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto j = ordered_json::parse(buf.str());
  const std::string kind = j.value("kind", "");
  bool same = false;
  std::string status;
  if (kind == "coherent_tuple") {
    const CoherentTuple t = tuple_from_json(buf.str());
    same = tuple_from_json(tuple_to_json(t)) == t;
    const auto cert = is_coherent(t);
    status = cert.coherent ? "coherent" : "not coherent: " + cert.failure;
  } else if (kind == "finite_tuple") {
    const FiniteCoherentTuple t = finite_tuple_from_json(buf.str());
    same = finite_tuple_from_json(finite_tuple_to_json(t)) == t;
    status = is_coherent_finite(t).coherent ? "coherent" : "not coherent";
  } else {
    throw DomainError("unknown kind '" + kind + "'");
  }
  std::cout << "kind " << kind << ": round-trip " << (same ? "ok" : "MISMATCH") << ", " << status << "\n";
  return same ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curtis: coherent tuple rings, finite tori and Frobenius-inertia pairs"};
  app.require_subcommand(1);
  SessionConfig cfg;
  std::string json_path;
  std::string word = "s^1 f^0";
  int index = 0;

  app.add_option("--ell", cfg.ell, "prime ell")->envname("CURTIS_ELL");
  app.add_option("--q", cfg.q, "residue field size q")->envname("CURTIS_Q");
  app.add_option("--n", cfg.n, "dimension n")->envname("CURTIS_N");
  app.add_option("--mode", cfg.mode, "rectified | plain")->envname("CURTIS_MODE");
  app.add_option("--conductor", cfg.conductor, "cyclotomic conductor E (0 = automatic)")->envname("CURTIS_CONDUCTOR");
  app.add_option("--value-modulus", cfg.value_modulus, "Frobenius values range over mu_N")
      ->envname("CURTIS_VALUE_MODULUS");
  app.add_option("--window", cfg.window, "Q-degree window")->envname("CURTIS_WINDOW");
  app.add_option("--samples", cfg.samples, "sample count")->envname("CURTIS_SAMPLES");
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("CURTIS_SEED");
  app.add_option("--jobs", cfg.jobs, "concurrent checks")->envname("CURTIS_JOBS");
  app.add_option("--json", json_path, "write JSON output to this path")->envname("CURTIS_JSON");
  app.add_flag("--exhaustive", cfg.exhaustive, "exhaustive point enumeration")->envname("CURTIS_EXHAUSTIVE");
  app.add_option("--r", cfg.r, "prime field size for matrix points")->envname("CURTIS_R");
  app.add_flag("--timings", cfg.timings, "print per-check timings")->envname("CURTIS_TIMINGS");
  app.add_option("--word", word, "word for export trace, e.g. \"s^1 f^2\"")->envname("CURTIS_WORD");
  app.add_option("--index", index, "basis or class index for export embed / idempotent");

  std::string suite, object, element, import_path;
  app.fallthrough();
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "finite | coherent | weil | xvariety | axioms | all")->required();
  auto* enumerate = app.add_subcommand("enumerate", "enumerate objects as a JSON table");
  enumerate->add_option("object", object, "ss-classes | ssreps | points | relevant-partitions")->required();
  auto* exporter = app.add_subcommand("export", "export a named element as JSON");
  exporter->add_option("element", element, "trace | unitQ | idempotent | embed")->required();
  auto* importer = app.add_subcommand("import", "read an exported JSON file and check the round trip");
  importer->add_option("path", import_path, "JSON file")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    cfg.validate();
    if (*verify) return cmd_verify(suite, cfg, json_path);
    if (*enumerate) return cmd_enumerate(object, cfg, json_path);
    if (*exporter) return cmd_export(element, cfg, word, index, json_path);
    if (*importer) return cmd_import(import_path);
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const DomainError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
