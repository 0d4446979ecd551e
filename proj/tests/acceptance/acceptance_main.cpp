// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/finite.hpp"
#include "curtis/frob.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"

using namespace curtis;

namespace {

// Wall-clock limits in seconds; 0 means unlimited.
constexpr double kRankLimit = 60.0;
constexpr double kInductionLimit = 120.0;
constexpr double kClassifierLimit = 120.0;

constexpr std::int64_t kValueModulus = 12;
constexpr std::size_t kOracleTuples = 200;
constexpr std::size_t kTraceCharacters = 50;
constexpr std::size_t kEmbedSamples = 50;
constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<const TameParams> params(std::int64_t ell, std::int64_t q, int n) {
  return std::make_shared<const TameParams>(ell, q, n);
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

Verdict fail(std::string why) { return Verdict{false, std::move(why)}; }

Verdict c1_rank() {
  struct Case {
    std::int64_t q;
    int n;
    std::int64_t ell;
  };
  const std::vector<Case> cases{{2, 1, 3}, {2, 2, 3}, {3, 2, 2}, {4, 2, 3}, {2, 3, 3}};
  std::ostringstream d;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const FiniteBasis b = coherent_basis(c.q, c.n);
    const std::size_t classes = enumerate_ss_classes(c.q, c.n).size();
    const double dt = seconds_since(t0);
    d << "(q=" << c.q << ",n=" << c.n << ") " << b.basis.size() << "=" << classes << " ";
    if (b.basis.size() != classes || b.class_count != classes) return fail(d.str() + "rank differs");
    if (dt > kRankLimit) return fail(d.str() + "over time limit");
  }
  return Verdict{true, d.str()};
}

Verdict c2_idempotents() {
  std::ostringstream d;
  for (const auto& [q, ell] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 2}, {2, 7}}) {
    const int n = 2;
    const auto classes = ell_regular_classes(q, n, ell);
    std::vector<FiniteCoherentTuple> es;
    FiniteCoherentTuple sum(q, n);
    for (const auto& s : classes) {
      es.push_back(idempotent_tuple(q, n, ell, s));
      if (!is_coherent_finite(es.back()).coherent) return fail("not coherent: " + s.to_string());
      if (!(es.back() * es.back() == es.back())) return fail("not idempotent: " + s.to_string());
      sum += es.back();
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (!(es[i] * es[j]).is_zero()) return fail("not orthogonal: " + classes[i].to_string());
      }
    }
    if (!(sum == FiniteCoherentTuple::constant(q, n, Cyclotomic::from_int(1)))) return fail("sum is not 1");
    d << "(q=" << q << ",ell=" << ell << ") " << es.size() << " blocks ";
  }
  return Verdict{true, d.str()};
}

Verdict c3_induction() {
  const auto t0 = Clock::now();
  const auto p = params(3, 2, 6);
  std::size_t count = 0;
  for (const ModeConfig mode : {ModeConfig{Mode::rectified}, ModeConfig{Mode::plain}}) {
    for (int d = 1; d <= 6; ++d) {
      for (std::int64_t C = 0; C < p->L(); C += p->scale(d)) {
        for (std::int64_t k = 0; k < kValueModulus; ++k) {
          const Cyclotomic alpha = Cyclotomic::zeta(kValueModulus, k);
          if (!(SSRep(induce_factor(*p, d, C, alpha, mode)) == SSRep(metacyclic_oracle(*p, d, C, alpha, mode)))) {
            return fail("d=" + std::to_string(d) + " C=" + std::to_string(C) + " alpha=" + alpha.to_string() +
                        " " + mode.name());
          }
          ++count;
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt > kInductionLimit) return fail("over time limit");
  return Verdict{true, std::to_string(count) + " cases, L=" + std::to_string(p->L())};
}

Verdict c4_oracle() {
  std::mt19937_64 rng(kSeed);
  const ModeConfig mode{Mode::rectified};
  std::size_t members = 0;
  std::size_t total = 0;
  auto compare = [&](const CoherentTuple& t, std::size_t samples) -> std::optional<std::string> {
    const bool a = is_coherent(t).coherent;
    const OracleReport o = coherence_point_oracle(t, samples, kValueModulus, rng());
    ++total;
    members += a;
    if (a != o.coherent) return t.to_string() + " (" + o.witness + ")";
    return std::nullopt;
  };

  {
    const int n = 2;
    const auto p = params(3, 2, n);
    std::vector<CoherentTuple> named;
    for (int e = 0; e <= 2; ++e) {
      for (int f = -3; f <= 3; ++f) named.push_back(trace_tuple(p, n, e, f, mode));
    }
    for (int k : {-2, -1, 1, 2}) named.push_back(unit_Q(p, n, mode, k));
    named.push_back(CoherentTuple::constant(p, n, mode, Cyclotomic::from_int(1)));
    const FiniteBasis fb = coherent_basis(p->q(), n);
    const auto e1 = idempotent_tuple(p->q(), n, p->ell(), SSClass{std::vector<FqOrbit>(n)});
    for (const auto& x : fb.basis) {
      const auto y = e1 * x;
      if (!y.is_zero()) named.push_back(embed_into_A(y, p, mode));
    }
    for (const auto& t : named) {
      if (auto w = compare(t, 200)) return fail("named generator: " + *w);
    }

    WindowSpec spec;
    spec.support = relevant_partitions(*p, n);
    spec.window = 1;
    const auto basis = window_basis(p, n, mode, spec);
    for (std::size_t s = 0; s < kOracleTuples; ++s) {
      CoherentTuple t = CoherentTuple::zero(p, n, mode);
      for (const auto& b : basis) t += b.scaled(Cyclotomic::from_int(static_cast<long>(rng() % 5) - 2));
      if (s % 2 == 1) {
        // Break coherence with one stray monomial.
        auto& comp = t.at(spec.support[rng() % spec.support.size()]);
        Monomial m = comp.unit_monomial();
        for (int i = 0; i < comp.torus().rank(); ++i) {
          m.qexp[i] = static_cast<int>(rng() % 3) - 1;
          m.texp[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(comp.torus().torsion_order(i)));
        }
        comp.add_term(std::move(m), Cyclotomic::from_int(1 + static_cast<long>(rng() % 3)));
      }
      if (auto w = compare(t, 200)) return fail("random tuple: " + *w);
    }
  }

  {
    const int n = 6;
    const auto p = params(3, 2, n);
    WindowSpec spec;
    spec.support = relevant_partitions(*p, n);
    spec.window = 1;
    spec.degree = 0;
    const auto basis = window_basis(p, n, mode, spec);
    for (const auto& b : basis) {
      if (auto w = compare(b, 60)) return fail("n=6 window basis: " + *w);
    }
    for (std::size_t s = 0; s < 20; ++s) {
      CoherentTuple t = CoherentTuple::zero(p, n, mode);
      for (const auto& b : basis) t += b.scaled(Cyclotomic::from_int(static_cast<long>(rng() % 5) - 2));
      if (s % 2 == 1) {
        auto& comp = t.at(spec.support[rng() % spec.support.size()]);
        Monomial m = comp.unit_monomial();
        for (int i = 0; i < comp.torus().rank(); ++i) {
          m.texp[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(comp.torus().torsion_order(i)));
        }
        comp.add_term(std::move(m), Cyclotomic::from_int(1));
      }
      if (auto w = compare(t, 60)) return fail("n=6 window: " + *w);
    }
  }
  return Verdict{true, std::to_string(total) + " tuples, " + std::to_string(members) + " coherent, 0 disagreements"};
}

Verdict c5_traces() {
  std::mt19937_64 rng(kSeed + 5);
  std::size_t count = 0;
  const auto p = params(3, 2, 6);
  for (const ModeConfig mode : {ModeConfig{Mode::rectified}, ModeConfig{Mode::plain}}) {
    for (int n = 1; n <= 6; ++n) {
      for (const auto& nu : nt::partitions(n)) {
        const Torus torus(p, nu);
        for (std::size_t s = 0; s < kTraceCharacters; ++s) {
          const Character th = random_character(torus, kValueModulus, rng);
          const SSRep rho = rho_of(torus, th, mode);
          for (int e = -1; e <= 2; ++e) {
            for (int f = -6; f <= 6; ++f) {
              if (evaluate(trace_element(torus, e, f, mode), th) != trace_at(*p, rho, e, f)) {
                return fail(partition_string(nu) + " s^" + std::to_string(e) + " f^" + std::to_string(f) + " " +
                            mode.name());
              }
              ++count;
            }
          }
        }
      }
    }
  }
  return Verdict{true, std::to_string(count) + " evaluations"};
}

Verdict c6_grading() {
  std::mt19937_64 rng(kSeed + 6);
  std::size_t products = 0;
  for (const ModeConfig mode : {ModeConfig{Mode::rectified}, ModeConfig{Mode::plain}}) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = params(3, 2, n);
      std::vector<std::pair<CoherentTuple, int>> pool;
      for (int e = 0; e <= 2; ++e) {
        for (int f = -3; f <= 3; ++f) {
          const auto t = trace_tuple(p, n, e, f, mode);
          if (t.is_zero()) continue;
          if (homogeneous_degree(t) != f) return fail("trace tuple n=" + std::to_string(n) + " f=" + std::to_string(f));
          pool.emplace_back(t, f);
        }
      }
      const auto Q = unit_Q(p, n, mode);
      if (homogeneous_degree(Q) != n) return fail("Q_" + std::to_string(n));
      pool.emplace_back(Q, n);
      for (int s = 0; s < 10; ++s) {
        const auto& [a, da] = pool[rng() % pool.size()];
        const auto& [b, db] = pool[rng() % pool.size()];
        const auto ab = a * b;
        if (!ab.is_zero() && homogeneous_degree(ab) != da + db) return fail("product degree at n=" + std::to_string(n));
        ++products;
      }
    }
  }
  return Verdict{true, std::to_string(products) + " products"};
}

Verdict c7_keystone() {
  std::size_t words = 0;
  for (const ModeConfig mode : {ModeConfig{Mode::rectified}, ModeConfig{Mode::plain}}) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = params(3, 2, n);
      for (int f = -4; f <= 4; ++f) {
        if (!(invariant_to_A(InvariantFn::trace(Word::sf(0, f)), p, n, mode) == trace_tuple(p, n, 0, f, mode))) {
          return fail("tr Fr^" + std::to_string(f) + " n=" + std::to_string(n) + " " + mode.name());
        }
        ++words;
      }
      const auto det = invariant_to_A(InvariantFn::det_fr(), p, n, mode);
      const auto Q = unit_Q(p, n, mode);
      if (mode.mode == Mode::rectified && !(det == Q)) return fail("det Fr != Q_" + std::to_string(n));
      for (const auto& [nu, x] : det.components()) {
        long sign = 1;
        for (int d : nu) {
          if (mode.mode == Mode::plain && d % 2 == 0) sign = -sign;
        }
        if (x != Q.at(nu).scaled(Cyclotomic::from_int(sign))) {
          return fail("defect shape at " + partition_string(nu) + " " + mode.name());
        }
      }
    }
  }
  return Verdict{true, std::to_string(words) + " trace words; det = Q_n (rectified), per-cycle defect (plain)"};
}

Verdict c8_classifier() {
  const auto t0 = Clock::now();
  const auto pts = enumerate_points(7, 2, 2, true);
  const auto rep = classifier_consistency(pts.points, 3, 2, 1, kSeed);
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << pts.count << " points, " << rep.in_component << " in X^0";
  if (!pts.exhaustive) return fail("enumeration not exhaustive");
  if (!rep.pass()) return fail(d.str() + ": " + rep.witness);
  if (dt > kClassifierLimit) return fail(d.str() + ": over time limit");
  return Verdict{true, d.str()};
}

Verdict c9_embedding() {
  std::mt19937_64 rng(kSeed + 9);
  const int n = 2;
  const auto p = params(3, 2, n);
  const ModeConfig mode{Mode::rectified};
  const FiniteBasis fb = coherent_basis(2, n);
  const auto e1 = idempotent_tuple(2, n, 3, SSClass{std::vector<FqOrbit>(n)});
  std::vector<FiniteCoherentTuple> block;
  for (const auto& x : fb.basis) {
    const auto y = e1 * x;
    if (!y.is_zero()) block.push_back(y);
  }
  std::size_t checked = 0;
  for (const auto& x : block) {
    const CoherentTuple img = embed_into_A(x, p, mode);
    for (const auto& [nu, comp] : img.components()) {
      if (!compact_support(comp)) return fail("not compact at " + partition_string(nu));
    }
    if (!is_coherent(img).coherent) return fail("image not coherent");
    const auto support = relevant_partitions(*p, n);
    for (std::size_t s = 0; s < kEmbedSamples; ++s) {
      const Partition& nu = support[rng() % support.size()];
      const Torus torus(p, nu);
      const Character th = random_character(torus, kValueModulus, rng);
      std::vector<std::pair<std::int64_t, std::int64_t>> eig;
      for (int i = 0; i < torus.rank(); ++i) {
        for (auto c : orbit_elements(*p, th.C[i])) eig.emplace_back(c, p->L());
        // orbit_elements lists one orbit; repeat it when the factor degree is a multiple.
        for (int r = orbit_of(*p, th.C[i]).size; r < torus.part(i); r += orbit_of(*p, th.C[i]).size) {
          for (auto c : orbit_elements(*p, th.C[i])) eig.emplace_back(c, p->L());
        }
      }
      const SSClass cls = ss_class_from_eigenvalues(p->q(), eig);
      if (evaluate(img.at(nu), th) != x.value_at(cls)) return fail("evaluation mismatch on " + partition_string(nu));
      ++checked;
    }
  }
  return Verdict{true, std::to_string(block.size()) + " basis elements, " + std::to_string(checked) + " evaluations"};
}

Verdict c10_kernel() {
  const auto p = params(3, 2, 6);
  const ModeConfig mode{Mode::rectified};
  std::size_t elements = 0;
  for (int window = 0; window <= 2; ++window) {
    const KernelSlice ks = kernel_slice_basis(p, 2, 6, window, mode);
    for (const auto& b : ks.basis) {
      for (const auto& [deg, piece] : grade(b)) {
        if (deg % 6 != 0) return fail("degree " + std::to_string(deg) + " is not a multiple of n");
        const auto c = piece * unit_Q(p, 6, mode, -deg / 6);
        for (const auto& [nu, comp] : c.components()) {
          if (!compact_support(comp)) return fail("cofactor not compact at " + partition_string(nu));
        }
      }
      ++elements;
    }
  }
  return Verdict{true, std::to_string(elements) + " kernel elements over windows 0..2"};
}

Verdict c11_axioms() {
  std::ostringstream d;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& a : axioms_harness(params(3, 2, n), n, ModeConfig{Mode::rectified})) {
      std::cout << "      n=" << n << " " << (a.pass ? "pass" : "FAIL") << "  " << a.name << "  [" << a.anchor
                << "]\n";
      if (!a.pass) return fail(a.name + ": " + a.detail);
    }
  }
  d << "6 conditions at n=1,2";
  return Verdict{true, d.str()};
}

}  // namespace

int main() {
  std::cout << std::unitbuf;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"C1  finite-ring dimension", c1_rank},
      {"C2  idempotent partition of unity", c2_idempotents},
      {"C3  induction oracle", c3_induction},
      {"C4  coherence decision", c4_oracle},
      {"C5  trace elements", c5_traces},
      {"C6  grading", c6_grading},
      {"C7  keystone cross-check", c7_keystone},
      {"C8  component classifier", c8_classifier},
      {"C9  finite embedding", c9_embedding},
      {"C10 kernel containment", c10_kernel},
      {"C11 axiom harness", c11_axioms},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", seconds_since(t0));
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << "  " << v.detail << "  (" << secs << ")\n";
    failures += !v.pass;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: " + std::to_string(failures) + " failing")
            << "\n";
  return failures == 0 ? 0 : 1;
}
