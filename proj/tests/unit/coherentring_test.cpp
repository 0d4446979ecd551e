#include <gtest/gtest.h>

#include <random>

#include "curtis/coherent.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"
#include "gen.hpp"

using namespace curtis;

namespace {

const ModeConfig kRect{Mode::rectified};
const ModeConfig kPlain{Mode::plain};

std::shared_ptr<const TameParams> params(std::int64_t ell, std::int64_t q, int n) {
  return std::make_shared<const TameParams>(ell, q, n);
}

TorusRingElem zeta_sum(const Torus& t) { return TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2); }

TEST(RelevantPartitions, Examples) {
  EXPECT_EQ(relevant_partitions(TameParams(3, 2, 2), 2), (std::vector<Partition>{{2}, {1, 1}}));
  EXPECT_EQ(nu_max(TameParams(3, 2, 2), 2), (Partition{2}));
  EXPECT_EQ(relevant_partitions(TameParams(3, 2, 3), 3), (std::vector<Partition>{{2, 1}, {1, 1, 1}}));
  EXPECT_EQ(nu_max(TameParams(3, 2, 3), 3), (Partition{2, 1}));
  EXPECT_EQ(relevant_partitions(TameParams(2, 3, 2), 2), (std::vector<Partition>{{2}, {1, 1}}));
}

TEST(RelevantPartitions, Associated) {
  const TameParams p(3, 2, 6);
  EXPECT_EQ(associated_relevant(p, {3}), (Partition{1, 1, 1}));
  EXPECT_EQ(associated_relevant(p, {4}), (Partition{2, 2}));
  EXPECT_EQ(associated_relevant(p, {6}), (Partition{6}));
}

TEST(TraceTuple, DegreeTwoExamples) {
  auto p = params(3, 2, 2);
  const Torus t2(p, {2});
  const Torus t11(p, {1, 1});
  const auto s = trace_tuple(p, 2, 1, 0, kRect);
  EXPECT_EQ(s.at({2}), zeta_sum(t2));
  EXPECT_EQ(s.at({1, 1}), TorusRingElem::constant(t11, Cyclotomic::from_int(2)));
  const auto f = trace_tuple(p, 2, 0, 1, kRect);
  EXPECT_TRUE(f.at({2}).is_zero());
  EXPECT_EQ(f.at({1, 1}), TorusRingElem::Q(t11, 0) + TorusRingElem::Q(t11, 1));
  for (const auto& mode : {kRect, kPlain}) {
    const auto f2 = trace_tuple(p, 2, 0, 2, mode);
    EXPECT_EQ(f2.at({2}), TorusRingElem::Q(t2, 0).scaled(Cyclotomic::from_int(2 * mode.sign(2))));
    EXPECT_EQ(f2.at({1, 1}), TorusRingElem::Q(t11, 0, 2) + TorusRingElem::Q(t11, 1, 2));
  }
}

TEST(UnitQ, Examples) {
  auto p1 = params(3, 2, 1);
  EXPECT_EQ(unit_Q(p1, 1, kRect).at({1}), TorusRingElem::Q(Torus(p1, {1}), 0));
  auto p = params(3, 2, 2);
  const auto q = unit_Q(p, 2, kRect);
  const Torus t11(p, {1, 1});
  EXPECT_EQ(q.at({2}), TorusRingElem::Q(Torus(p, {2}), 0));
  EXPECT_EQ(q.at({1, 1}), TorusRingElem::Q(t11, 0) * TorusRingElem::Q(t11, 1));
  EXPECT_EQ(unit_Q(p, 2, kRect) * unit_Q(p, 2, kRect, -1), CoherentTuple::constant(p, 2, kRect, Cyclotomic::from_int(1)));
}

TEST(IsCoherent, Examples) {
  auto p = params(3, 2, 2);
  EXPECT_TRUE(is_coherent(unit_Q(p, 2, kRect)).coherent);
  const auto plain = is_coherent(unit_Q(p, 2, kPlain));
  EXPECT_FALSE(plain.coherent);
  EXPECT_NE(plain.failure.find("(1,1)->(2)"), std::string::npos) << plain.failure;

  CoherentTuple z = CoherentTuple::zero(p, 2, kRect);
  z.at({2}) = TorusRingElem::zeta(Torus(p, {2}), 0);
  EXPECT_FALSE(is_coherent(z).coherent);
}

TEST(PointOracle, Examples) {
  auto p = params(3, 2, 2);
  EXPECT_TRUE(coherence_point_oracle(CoherentTuple::zero(p, 2, kRect), 50, 12).coherent);
  const auto rep = coherence_point_oracle(unit_Q(p, 2, kPlain), 50, 12);
  EXPECT_FALSE(rep.coherent);
  EXPECT_NE(rep.witness.find("(2)"), std::string::npos) << rep.witness;
  EXPECT_NE(rep.witness.find("(1,1)"), std::string::npos) << rep.witness;
}

TEST(Grade, Examples) {
  auto p = params(3, 2, 2);
  EXPECT_EQ(homogeneous_degree(trace_tuple(p, 2, 0, 2, kRect)), 2);
  EXPECT_EQ(homogeneous_degree(unit_Q(p, 2, kRect)), 2);
  EXPECT_EQ(homogeneous_degree(trace_tuple(p, 2, 1, 0, kRect)), 0);
  const auto mixed = trace_tuple(p, 2, 0, 2, kRect) + unit_Q(p, 2, kRect, -1);
  EXPECT_FALSE(homogeneous_degree(mixed).has_value());
  const auto pieces = grade(mixed);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces.at(-2), unit_Q(p, 2, kRect, -1));
}

TEST(IndNu, Examples) {
  auto p = params(3, 2, 3);
  const Partition blocks{2, 1};
  EXPECT_TRUE(ind_nu(CoherentTuple::zero(p, 3, kRect), blocks).is_zero());
  const auto lhs = ind_nu(unit_Q(p, 3, kRect), blocks);
  const auto rhs = tensor_product({unit_Q(params(3, 2, 2), 2, kRect), unit_Q(params(3, 2, 1), 1, kRect)});
  EXPECT_EQ(lhs, rhs);
}

TEST(KernelSlice, ZeroExcludedAndClosedUnderQ) {
  auto p = params(3, 2, 6);
  const KernelSlice ks = kernel_slice_basis(p, 2, 6, 1, kRect);
  ASSERT_FALSE(ks.basis.empty());
  const auto Q = unit_Q(p, 6, kRect);
  for (std::size_t i = 0; i < ks.basis.size(); ++i) {
    const auto& b = ks.basis[i];
    EXPECT_FALSE(b.is_zero());
    EXPECT_TRUE(is_coherent(b).coherent);
    EXPECT_TRUE(ind_nu(b, {2, 2, 2}).is_zero());
    EXPECT_TRUE(ind_nu(b * Q, {2, 2, 2}).is_zero());
    EXPECT_EQ(b, ks.compact_part[i] * unit_Q(p, 6, kRect, ks.q_power[i]));
    for (const auto& [nu, comp] : ks.compact_part[i].components()) EXPECT_TRUE(compact_support(comp));
    // The (6) component is invariant under the Frobenius twist.
    EXPECT_TRUE(is_invariant(b.at({6})));
  }
}

TEST(Axioms, DegreeOneTrivial) {
  for (const auto& a : axioms_harness(params(3, 2, 1), 1, kRect)) EXPECT_TRUE(a.pass) << a.name << ": " << a.detail;
}

// Properties.

CoherentTuple random_member(std::mt19937_64& rng, const std::vector<CoherentTuple>& basis,
                            std::shared_ptr<const TameParams> p, int n) {
  CoherentTuple t = CoherentTuple::zero(p, n, kRect);
  for (const auto& b : basis) t += b.scaled(Cyclotomic::from_int(static_cast<long>(testgen::uniform(rng, -2, 2))));
  return t;
}

TEST(CoherentProperty, RingClosure) {
  auto p = params(3, 2, 2);
  WindowSpec spec;
  spec.support = relevant_partitions(*p, 2);
  spec.window = 1;
  const auto basis = window_basis(p, 2, kRect, spec);
  ASSERT_FALSE(basis.empty());
  std::mt19937_64 rng(41);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_member(rng, basis, p, 2);
    const auto b = random_member(rng, basis, p, 2);
    EXPECT_TRUE(is_coherent(a + b).coherent);
    EXPECT_TRUE(is_coherent(a * b).coherent);
  }
}

TEST(CoherentProperty, GradingIsMultiplicative) {
  auto p = params(3, 2, 3);
  std::mt19937_64 rng(42);
  std::vector<CoherentTuple> pool;
  for (int e = 0; e <= 2; ++e) {
    for (int f = -2; f <= 2; ++f) pool.push_back(trace_tuple(p, 3, e, f, kRect));
  }
  pool.push_back(unit_Q(p, 3, kRect));
  for (int it = 0; it < 100; ++it) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto da = homogeneous_degree(a);
    const auto db = homogeneous_degree(b);
    if (!da || !db) continue;
    const auto ab = a * b;
    if (!ab.is_zero()) EXPECT_EQ(homogeneous_degree(ab), *da + *db);
  }
}

TEST(CoherentProperty, GeneratorsPassPerturbationsFail) {
  std::mt19937_64 rng(43);
  // At n = 1 every element is coherent, so perturbations start at n = 2.
  for (int n = 2; n <= 4; ++n) {
    auto p = params(3, 2, n);
    EXPECT_TRUE(is_coherent(unit_Q(p, n, kRect)).coherent) << n;
    for (int e = 0; e <= 2; ++e) {
      for (int f = -2; f <= 2; ++f) {
        auto t = trace_tuple(p, n, e, f, kRect);
        ASSERT_TRUE(is_coherent(t).coherent) << "n=" << n << " e=" << e << " f=" << f;
        const auto parts = relevant_partitions(*p, n);
        auto& comp = t.at(parts[rng() % parts.size()]);
        comp += testgen::torus_element(rng, comp.torus(), 1);
        if (comp == trace_tuple(p, n, e, f, kRect).at(comp.torus().parts())) continue;
        EXPECT_FALSE(is_coherent(t).coherent) << "n=" << n << " e=" << e << " f=" << f;
        EXPECT_FALSE(coherence_point_oracle(t, 80, 12, rng()).coherent) << "n=" << n << " e=" << e << " f=" << f;
      }
    }
  }
}

TEST(CoherentProperty, MembershipAgreesWithOracle) {
  auto p = params(3, 2, 2);
  WindowSpec spec;
  spec.support = relevant_partitions(*p, 2);
  spec.window = 1;
  const auto basis = window_basis(p, 2, kRect, spec);
  std::mt19937_64 rng(44);
  for (int it = 0; it < 60; ++it) {
    auto t = random_member(rng, basis, p, 2);
    if (it % 2) {
      auto& comp = t.at(spec.support[rng() % spec.support.size()]);
      comp += testgen::torus_element(rng, comp.torus(), 1);
    }
    EXPECT_EQ(is_coherent(t).coherent, coherence_point_oracle(t, 100, 12, rng()).coherent) << t.to_string();
  }
}

TEST(CoherentProperty, IndNuIsRingMapAndMatchesDirectSum) {
  auto p = params(3, 2, 3);
  const Partition blocks{2, 1};
  std::mt19937_64 rng(45);
  for (int e = 0; e <= 1; ++e) {
    for (int f = -2; f <= 2; ++f) {
      const auto a = trace_tuple(p, 3, e, f, kRect);
      const auto b = trace_tuple(p, 3, 1 - e, -f, kRect);
      EXPECT_EQ(ind_nu(a * b, blocks), ind_nu(a, blocks) * ind_nu(b, blocks));
      const TensorTuple img = ind_nu(a, blocks);
      for (const auto& [key, comp] : img.components()) {
        for (int s = 0; s < 10; ++s) {
          std::vector<Character> thetas;
          SSRep sum;
          for (const auto& part : key) {
            const Torus t(p, part);
            thetas.push_back(testgen::character(rng, t, 12));
            sum = sum.direct_sum(rho_of(t, thetas.back(), kRect));
          }
          EXPECT_EQ(img.evaluate_at(key, thetas), trace_at(*p, sum, e, f));
        }
      }
    }
  }
}

}  // namespace
