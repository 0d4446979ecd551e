#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <random>
#include <map>
#include <sstream>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/finite.hpp"
#include "curtis/frob.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"

namespace curtis::cli {

void SessionConfig::validate() const {
  if (!nt::is_prime(ell)) throw DomainError("--ell must be prime");
  if (q < 2 || nt::prime_power_base(q) == 0) throw DomainError("--q must be a prime power");
  if (std::gcd(q, ell) != 1) throw DomainError("gcd(q, ell) must be 1");
  if (n < 1 || n > 12) throw DomainError("--n must lie in [1, 12]");
  if (value_modulus < 1) throw DomainError("--value-modulus must be positive");
  if (window < 0) throw DomainError("--window must be non-negative");
  if (jobs < 1) throw DomainError("--jobs must be positive");
  if (!nt::is_prime(r)) throw DomainError("--r must be prime");
  (void)mode_config();
  if (conductor != 0 && conductor % TameParams(ell, q, n).L() != 0) {
    throw DomainError("--conductor must be divisible by ell^A");
  }
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"finite", "coherent", "weil", "xvariety", "axioms", "all"};
  return names;
}

namespace {

Outcome pass(std::string detail) { return Outcome{Status::pass, std::move(detail), ""}; }
Outcome fail(std::string detail, std::string witness) {
  return Outcome{Status::fail, std::move(detail), std::move(witness)};
}

Character random_character(const Torus& torus, std::int64_t N, std::mt19937_64& rng) {
  const TameParams& p = torus.params();
  Character th;
  for (int i = 0; i < torus.rank(); ++i) {
    const std::int64_t s = p.scale(torus.part(i));
    th.C.push_back(s * static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.L() / s)));
    th.alpha.push_back(Cyclotomic::zeta(N, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(N))));
  }
  return th;
}

// ---- finite ----

std::vector<Check> finite_checks() {
  std::vector<Check> out;
  out.push_back({"finite", "dimension count", "dimension of the finite coherent ring = number of semisimple classes",
                 [](const SessionConfig& c) {
                   const FiniteBasis b = coherent_basis(c.q, c.n);
                   std::ostringstream d;
                   d << "rank check " << b.basis.size() << " = " << b.class_count;
                   if (b.rank_matches()) return pass(d.str());
                   return fail(d.str(), "rank " + std::to_string(b.basis.size()) + " vs class count " +
                                            std::to_string(b.class_count));
                 }});
  out.push_back({"finite", "block idempotents", "block idempotents e_s: orthogonal, coherent, summing to 1",
                 [](const SessionConfig& c) {
                   const auto classes = ell_regular_classes(c.q, c.n, c.ell);
                   std::vector<FiniteCoherentTuple> es;
                   FiniteCoherentTuple sum(c.q, c.n);
                   for (const auto& s : classes) {
                     es.push_back(idempotent_tuple(c.q, c.n, c.ell, s));
                     const auto& e = es.back();
                     if (!is_coherent_finite(e).coherent) return fail("idempotent not coherent", s.to_string());
                     if (!(e * e == e)) return fail("e_s^2 != e_s", s.to_string());
                     sum += e;
                   }
                   for (std::size_t i = 0; i < es.size(); ++i) {
                     for (std::size_t j = i + 1; j < es.size(); ++j) {
                       if (!(es[i] * es[j]).is_zero()) {
                         return fail("idempotents not orthogonal", classes[i].to_string() + " x " + classes[j].to_string());
                       }
                     }
                   }
                   if (!(sum == FiniteCoherentTuple::constant(c.q, c.n, Cyclotomic::from_int(1)))) {
                     return fail("idempotents do not sum to 1", "");
                   }
                   return pass(std::to_string(classes.size()) + " ell-regular classes");
                 }});
  out.push_back({"finite", "embedding", "finite unipotent block embeds into the compact coherent ring",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   const FiniteBasis b = coherent_basis(c.q, c.n);
                   const auto e1 = idempotent_tuple(c.q, c.n, c.ell, SSClass{std::vector<FqOrbit>(c.n)});
                   std::size_t count = 0;
                   for (const auto& x : b.basis) {
                     const auto y = e1 * x;
                     if (y.is_zero()) continue;
                     const CoherentTuple img = embed_into_A(y, p, mode);
                     for (const auto& [nu, comp] : img.components()) {
                       if (!compact_support(comp)) return fail("image not compact", partition_string(nu));
                     }
                     const auto cert = is_coherent(img);
                     if (!cert.coherent) return fail("image not coherent", cert.failure);
                     ++count;
                   }
                   return pass(std::to_string(count) + " block elements embedded");
                 }});
  return out;
}

// ---- coherent ----

std::vector<Check> coherent_checks() {
  std::vector<Check> out;
  out.push_back({"coherent", "Q_n coherence", "Q_n is a coherent unit", [](const SessionConfig& c) {
                   const auto cert = is_coherent(unit_Q(c.params(), c.n, c.mode_config()));
                   if (cert.coherent) return pass("Q_" + std::to_string(c.n) + " coherent in " + c.mode + " mode");
                   return fail("Q_" + std::to_string(c.n) + " not coherent in " + c.mode + " mode", cert.failure);
                 }});
  out.push_back({"coherent", "trace tuples", "trace elements form coherent tuples", [](const SessionConfig& c) {
                   std::size_t count = 0;
                   for (int e = 0; e <= 2; ++e) {
                     for (int f = -2; f <= 2; ++f) {
                       const auto cert = is_coherent(trace_tuple(c.params(), c.n, e, f, c.mode_config()));
                       if (!cert.coherent) {
                         return fail("trace tuple not coherent", "word s^" + std::to_string(e) + " f^" +
                                                                     std::to_string(f) + ": " + cert.failure);
                       }
                       ++count;
                     }
                   }
                   return pass(std::to_string(count) + " words");
                 }});
  out.push_back({"coherent", "oracle agreement", "membership agrees with matched-point evaluation",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   std::mt19937_64 rng(c.seed);
                   WindowSpec spec;
                   spec.support = relevant_partitions(*p, c.n);
                   spec.window = std::min(c.window, 1);
                   spec.degree = 0;
                   const auto basis = window_basis(p, c.n, mode, spec);
                   std::size_t members = 0;
                   const std::size_t total = std::min<std::size_t>(c.samples, 40);
                   for (std::size_t s = 0; s < total; ++s) {
                     CoherentTuple t = CoherentTuple::zero(p, c.n, mode);
                     for (const auto& b : basis) t += b.scaled(Cyclotomic::from_int(static_cast<long>(rng() % 5) - 2));
                     if (s % 2 == 1) {
                       auto& comp = t.at(spec.support[rng() % spec.support.size()]);
                       Monomial m = comp.unit_monomial();
                       for (int i = 0; i < comp.torus().rank(); ++i) {
                         m.texp[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(comp.torus().torsion_order(i)));
                       }
                       comp.add_term(std::move(m), Cyclotomic::from_int(1));
                     }
                     const bool a = is_coherent(t).coherent;
                     const auto o = coherence_point_oracle(t, 50, c.value_modulus, rng());
                     if (a != o.coherent) return fail("membership and oracle disagree", t.to_string());
                     members += a;
                   }
                   return pass(std::to_string(total) + " tuples, " + std::to_string(members) + " members");
                 }});
  out.push_back({"coherent", "grading", "trace tuples and Q_n are homogeneous", [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   for (int f = -3; f <= 3; ++f) {
                     const auto t = trace_tuple(p, c.n, 1, f, mode);
                     if (t.is_zero()) continue;
                     if (homogeneous_degree(t) != f) return fail("trace tuple not homogeneous", "f=" + std::to_string(f));
                   }
                   if (homogeneous_degree(unit_Q(p, c.n, mode)) != c.n) return fail("Q_n degree", "");
                   return pass("degrees match");
                 }});
  return out;
}

// ---- weil ----

std::vector<Check> weil_checks() {
  std::vector<Check> out;
  out.push_back({"weil", "induction oracle", "induced factors agree with the metacyclic decomposition",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   const std::int64_t N = std::min<std::int64_t>(c.value_modulus, 12);
                   std::size_t count = 0;
                   for (int d = 1; d <= c.n; ++d) {
                     for (std::int64_t C = 0; C < p->L(); C += p->scale(d)) {
                       for (std::int64_t k = 0; k < N; ++k) {
                         const Cyclotomic alpha = Cyclotomic::zeta(N, k);
                         const SSRep a(induce_factor(*p, d, C, alpha, mode));
                         const SSRep b(metacyclic_oracle(*p, d, C, alpha, mode));
                         if (!(a == b)) {
                           return fail("induce_factor != oracle", "d=" + std::to_string(d) + " C=" + std::to_string(C) +
                                                                      " alpha=" + alpha.to_string());
                         }
                         ++count;
                       }
                     }
                   }
                   return pass(std::to_string(count) + " cases");
                 }});
  out.push_back({"weil", "trace elements", "closed-form trace element equals the trace of the representation",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   std::mt19937_64 rng(c.seed);
                   std::size_t count = 0;
                   for (const auto& nu : nt::partitions(c.n)) {
                     const Torus torus(p, nu);
                     for (std::size_t s = 0; s < std::min<std::size_t>(c.samples, 20); ++s) {
                       const Character th = random_character(torus, c.value_modulus, rng);
                       const SSRep rho = rho_of(torus, th, mode);
                       for (int e = 0; e <= 2; ++e) {
                         for (int f = -c.n; f <= c.n; ++f) {
                           if (evaluate(trace_element(torus, e, f, mode), th) != trace_at(*p, rho, e, f)) {
                             return fail("trace mismatch", "torus " + partition_string(nu) + " word s^" +
                                                               std::to_string(e) + " f^" + std::to_string(f));
                           }
                           ++count;
                         }
                       }
                     }
                   }
                   return pass(std::to_string(count) + " evaluations");
                 }});
  return out;
}

// ---- xvariety ----

std::vector<Check> xvariety_checks() {
  std::vector<Check> out;
  out.push_back({"xvariety", "trace restriction", "invariant traces restrict to the trace tuples",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   std::size_t count = 0;
                   for (int e = 0; e <= 2; ++e) {
                     for (int f = -4; f <= 4; ++f) {
                       const auto a = invariant_to_A(InvariantFn::trace(Word::sf(e, f)), p, c.n, mode);
                       if (!(a == trace_tuple(p, c.n, e, f, mode))) {
                         return fail("restriction differs from trace tuple", Word::sf(e, f).to_string());
                       }
                       ++count;
                     }
                   }
                   return pass(std::to_string(count) + " words");
                 }});
  out.push_back({"xvariety", "det Fr to Q_n", "det Fr restricts to Q_n", [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   const auto a = invariant_to_A(InvariantFn::det_fr(), p, c.n, mode);
                   const auto q = unit_Q(p, c.n, mode);
                   if (a == q) return pass("det Fr = Q_" + std::to_string(c.n) + " in " + c.mode + " mode");
                   for (const auto& [nu, x] : a.components()) {
                     if (x != q.at(nu)) return fail("det Fr differs from Q_n", partition_string(nu) + ": " + x.to_string());
                   }
                   return fail("det Fr differs from Q_n", "");
                 }});
  out.push_back({"xvariety", "det defect shape", "det Fr / Q_n equals the predicted per-cycle sign",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   const auto a = invariant_to_A(InvariantFn::det_fr(), p, c.n, mode);
                   const auto q = unit_Q(p, c.n, mode);
                   for (const auto& [nu, x] : a.components()) {
                     long sign = 1;
                     for (int d : nu) {
                       if (mode.mode == Mode::plain && d % 2 == 0) sign = -sign;
                     }
                     if (x != q.at(nu).scaled(Cyclotomic::from_int(sign))) {
                       return fail("defect has unexpected shape", partition_string(nu) + ": " + x.to_string());
                     }
                   }
                   return pass(mode.mode == Mode::plain ? "defect prod (-1)^(d-1) over cycles" : "no defect");
                 }});
  out.push_back({"xvariety", "point compatibility", "restricted invariants evaluate like the matrix point",
                 [](const SessionConfig& c) {
                   auto p = c.params();
                   const ModeConfig mode = c.mode_config();
                   std::mt19937_64 rng(c.seed);
                   const std::int64_t N = c.value_modulus;
                   const std::int64_t E = c.conductor != 0 ? c.conductor : std::lcm(p->L(), 2 * N * c.n);
                   const InvariantFn inv = InvariantFn::trace(Word::parse("s f^2 s^-1")) * InvariantFn::trace(Word::sf(1, 1)) +
                                           InvariantFn::det_fr(-1) + InvariantFn::trace(Word::sf(2, -1));
                   std::size_t labeled = 0;
                   std::size_t count = 0;
                   for (const auto& nu : relevant_partitions(*p, c.n)) {
                     const Torus torus(p, nu);
                     for (std::size_t s = 0; s < std::min<std::size_t>(c.samples, 10); ++s) {
                       const Character th = random_character(torus, N, rng);
                       const CycPoint pt = xw_point(torus, th, mode);
                       if (!pt.satisfies(p->q())) return fail("X^w point violates the relation", partition_string(nu));
                       if (evaluate(restrict_invariant_to_Xw(inv, torus, mode), th) != inv.evaluate(pt)) {
                         return fail("evaluation mismatch", partition_string(nu));
                       }
                       ++count;
                       try {
                         const auto ss = semisimplify(pt, p->q(), *p, E);
                         if (ss.rep) {
                           if (!(*ss.rep == rho_of(torus, th, mode))) {
                             return fail("semisimplification label differs from rho", partition_string(nu));
                           }
                           ++labeled;
                         }
                       } catch (const DomainError&) {
                       } catch (const ConductorError&) {
                       }
                     }
                   }
                   return pass(std::to_string(count) + " points, " + std::to_string(labeled) + " labeled");
                 }});
  out.push_back({"xvariety", "component classifier", "unipotence and eigenvalue classifiers agree and are invariant",
                 [](const SessionConfig& c) {
                   const int n = std::min(c.n, 2);
                   const bool exhaustive = c.exhaustive && c.r <= 7;
                   const auto pts = enumerate_points(c.r, n, c.q, exhaustive, c.samples, c.seed);
                   const auto rep = classifier_consistency(pts.points, c.ell, c.q, 1, c.seed);
                   std::ostringstream d;
                   d << pts.count << " points over F_" << c.r << " (n=" << n << ", "
                     << (exhaustive ? "exhaustive" : "sampled") << "), " << rep.in_component << " in X^0";
                   if (rep.pass()) return pass(d.str());
                   return fail(d.str(), rep.witness);
                 }});
  return out;
}

// ---- axioms ----

std::vector<Check> axiom_checks(const SessionConfig& cfg) {
  std::vector<Check> out;
  const std::vector<std::string> names{"Ind_max injective", "Ind_mn square", "f_1 iso", "T to Q_n", "consistency",
                                       "saturation"};
  // The harness runs once; each condition is reported separately.
  auto shared = std::make_shared<std::shared_future<std::vector<AxiomCheck>>>(
      std::async(std::launch::deferred, [cfg] {
        return axioms_harness(cfg.params(), cfg.n, cfg.mode_config(), cfg.window, cfg.seed);
      }).share());
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.push_back({"axioms", std::to_string(i + 1) + " " + names[i], "", [shared, i](const SessionConfig&) {
                     const auto& report = shared->get();
                     const AxiomCheck& a = report.at(i);
                     return a.pass ? pass(a.detail) : fail(a.anchor, a.detail);
                   }});
  }
  const std::vector<std::string> anchors{"Ind_{nu^max} injective on the window", "Ind_{m,n} square with f = id",
                                         "f_1 is an isomorphism", "A[T^{+-1}] -> A_{F,n,1} sends T to Q_n",
                                         "consistent sampled elements are coherent",
                                         "Ind_{nu^max} preimages and K-saturation"};
  for (std::size_t i = 0; i < out.size(); ++i) out[i].anchor = anchors[i];
  return out;
}

}  // namespace

std::vector<Check> build_suite(const std::string& suite, const SessionConfig& cfg) {
  std::vector<Check> out;
  auto append = [&out](std::vector<Check> more) {
    for (auto& c : more) out.push_back(std::move(c));
  };
  if (suite == "finite" || suite == "all") append(finite_checks());
  if (suite == "coherent" || suite == "all") append(coherent_checks());
  if (suite == "weil" || suite == "all") append(weil_checks());
  if (suite == "xvariety" || suite == "all") append(xvariety_checks());
  if (suite == "axioms" || suite == "all") append(axiom_checks(cfg));
  if (out.empty()) throw DomainError("unknown suite '" + suite + "'");
  return out;
}

namespace {

CheckResult run_one(const Check& check, const SessionConfig& cfg, std::size_t index) {
  CheckResult r;
  std::ostringstream key;
  key << check.suite << "/" << (index < 10 ? "0" : "") << index;
  r.key = key.str();
  r.suite = check.suite;
  r.name = check.name;
  r.anchor = check.anchor;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.outcome = check.run(cfg);
  } catch (const GuardError& e) {
    r.outcome = Outcome{Status::skipped, std::string("guard: ") + e.what(), ""};
  } catch (const ConductorError& e) {
    r.outcome = Outcome{Status::skipped, std::string("conductor: ") + e.what(), ""};
  } catch (const std::exception& e) {
    r.outcome = Outcome{Status::fail, "exception", e.what()};
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const std::vector<Check>& checks, const SessionConfig& cfg) {
  std::vector<CheckResult> results;
  std::map<std::string, std::size_t> per_suite;
  std::vector<std::size_t> index;
  for (const auto& c : checks) index.push_back(per_suite[c.suite]++);
  // Axiom checks share one harness run, so they stay on one thread.
  std::size_t next = 0;
  while (next < checks.size()) {
    std::vector<std::future<CheckResult>> batch;
    for (int j = 0; j < cfg.jobs && next < checks.size(); ++j, ++next) {
      const std::size_t k = next;
      if (cfg.jobs == 1 || checks[k].suite == "axioms") {
        results.push_back(run_one(checks[k], cfg, index[k]));
      } else {
        batch.push_back(std::async(std::launch::async, [&, k] { return run_one(checks[k], cfg, index[k]); }));
      }
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    static const std::vector<std::string> order{"finite", "coherent", "weil", "xvariety", "axioms"};
    const auto ia = std::find(order.begin(), order.end(), a.suite) - order.begin();
    const auto ib = std::find(order.begin(), order.end(), b.suite) - order.begin();
    return ia != ib ? ia < ib : a.key < b.key;
  });
  return results;
}

}  // namespace curtis::cli
