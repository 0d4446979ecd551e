#include <gtest/gtest.h>

#include <random>

#include "curtis/coherent.hpp"
#include "curtis/torus.hpp"
#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"
#include "gen.hpp"

using namespace curtis;

namespace {

const ModeConfig kRect{Mode::rectified};
const ModeConfig kPlain{Mode::plain};

std::shared_ptr<const TameParams> params(int n) { return std::make_shared<const TameParams>(3, 2, n); }

// Naive convolution of two elements, for the product oracle.
TorusRingElem convolve(const TorusRingElem& a, const TorusRingElem& b) {
  TorusRingElem out(a.torus());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.qexp.size(); ++i) {
        m.qexp[i] += mb.qexp[i];
        m.texp[i] = (m.texp[i] + mb.texp[i]) % a.torus().torsion_order(static_cast<int>(i));
      }
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

TEST(TorusRing, TorsionAndUnits) {
  const Torus t(params(2), {2});
  const auto one = TorusRingElem::constant(t, Cyclotomic::from_int(1));
  EXPECT_EQ(TorusRingElem::zeta(t, 0) * TorusRingElem::zeta(t, 0, 2), one);
  EXPECT_EQ(TorusRingElem::Q(t, 0) * TorusRingElem::Q(t, 0, -1), one);
  EXPECT_EQ(TorusRingElem::Q(t, 0).monomial_inverse(), TorusRingElem::Q(t, 0, -1));
}

TEST(TorusRing, SquareMatchesConvolution) {
  const Torus t(params(2), {2});
  const auto x = (TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2)) * TorusRingElem::Q(t, 0);
  EXPECT_EQ(x * x, convolve(x, x));
  // (z + z^2)^2 Q^2 = (z^2 + 2 + z) Q^2.
  TorusRingElem want(t);
  want.add_term(Monomial{{2}, {0}}, Cyclotomic::from_int(2));
  want.add_term(Monomial{{2}, {1}}, Cyclotomic::from_int(1));
  want.add_term(Monomial{{2}, {2}}, Cyclotomic::from_int(1));
  EXPECT_EQ(x * x, want);
}

TEST(Evaluate, Examples) {
  const Torus t(params(6), {2});
  const Character th{{3}, {Cyclotomic::zeta(12, 5)}};
  EXPECT_EQ(evaluate(TorusRingElem::constant(t, Cyclotomic::from_int(1)), th), Cyclotomic::from_int(1));
  EXPECT_EQ(evaluate(TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2), th), Cyclotomic::from_int(-1));
  EXPECT_EQ(evaluate(TorusRingElem::Q(t, 0), th), Cyclotomic::zeta(12, 5));
  EXPECT_FALSE(is_valid_character(t, Character{{1}, {Cyclotomic::from_int(1)}}));
}

TEST(Symmetries, Examples) {
  const Torus t2(params(2), {2});
  const auto z = TorusRingElem::zeta(t2, 0);
  const Symmetry twist{Symmetry::Kind::twist, 0, 0};
  EXPECT_EQ(apply_symmetry(z, twist), TorusRingElem::zeta(t2, 0, 2));
  EXPECT_EQ(apply_symmetry(z + z * z, twist), z + z * z);
  EXPECT_FALSE(is_invariant(z));
  EXPECT_TRUE(is_invariant(z + z * z));
  EXPECT_TRUE(is_invariant(TorusRingElem::Q(t2, 0)));
  EXPECT_TRUE(is_invariant(TorusRingElem::constant(t2, Cyclotomic::from_int(1))));

  const Torus t11(params(2), {1, 1});
  const Symmetry swap{Symmetry::Kind::swap, 0, 1};
  EXPECT_EQ(apply_symmetry(TorusRingElem::Q(t11, 0) * TorusRingElem::Q(t11, 1, 2), swap),
            TorusRingElem::Q(t11, 0, 2) * TorusRingElem::Q(t11, 1));
}

TEST(Comparison, SplitOfDegreeTwo) {
  auto p = params(2);
  const Torus t2(p, {2});
  const Torus t11(p, {1, 1});
  const SplitSpec s = make_split({2}, 0, 1);
  const auto one = TorusRingElem::constant(t11, Cyclotomic::from_int(1));
  EXPECT_EQ(comparison_map(one, t2, s, kRect).image, TorusRingElem::constant(t2, Cyclotomic::from_int(1)));
  const auto sum = TorusRingElem::Q(t11, 0) + TorusRingElem::Q(t11, 1);
  for (const auto& mode : {kRect, kPlain}) {
    const auto r = comparison_map(sum, t2, s, mode);
    EXPECT_TRUE(r.image.is_zero());
    EXPECT_EQ(r.image, trace_element(t2, 0, 1, mode));
  }
  const auto prod = TorusRingElem::Q(t11, 0) * TorusRingElem::Q(t11, 1);
  EXPECT_EQ(comparison_map(prod, t2, s, kPlain).image, -TorusRingElem::Q(t2, 0));
  EXPECT_EQ(comparison_map(prod, t2, s, kRect).image, TorusRingElem::Q(t2, 0));
}

TEST(TraceElement, DegreeTwoTorus) {
  const Torus t(params(2), {2});
  for (const auto& mode : {kRect, kPlain}) {
    EXPECT_TRUE(trace_element(t, 0, 1, mode).is_zero());
    EXPECT_EQ(trace_element(t, 0, 2, mode), TorusRingElem::Q(t, 0).scaled(Cyclotomic::from_int(2 * mode.sign(2))));
    EXPECT_EQ(trace_element(t, 1, 0, mode), TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2));
  }
}

TEST(CompactSupport, Examples) {
  auto p = params(4);
  const Torus t(p, {2});
  EXPECT_TRUE(compact_support(TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2)));
  EXPECT_FALSE(compact_support(TorusRingElem::Q(t, 0)));
  for (int n = 1; n <= 4; ++n) {
    for (const auto& nu : nt::partitions(n)) EXPECT_TRUE(compact_support(trace_element(Torus(p, nu), 1, 0, kRect)));
  }
}

// Properties.

TEST(TorusProperty, EvaluateIsRingHomomorphism) {
  auto p = params(4);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 500; ++it) {
    const auto parts = nt::partitions(static_cast<int>(testgen::uniform(rng, 1, 4)));
    const Torus t(p, parts[rng() % parts.size()]);
    const auto x = testgen::torus_element(rng, t, 3);
    const auto y = testgen::torus_element(rng, t, 3);
    const Character th = testgen::character(rng, t, 12);
    EXPECT_EQ(evaluate(x * y, th), evaluate(x, th) * evaluate(y, th));
    EXPECT_EQ(evaluate(x + y, th), evaluate(x, th) + evaluate(y, th));
  }
}

TEST(TorusProperty, SymmetriesTransportCharacters) {
  auto p = params(4);
  std::mt19937_64 rng(32);
  for (int it = 0; it < 200; ++it) {
    const auto parts = nt::partitions(static_cast<int>(testgen::uniform(rng, 1, 4)));
    const Torus t(p, parts[rng() % parts.size()]);
    const auto x = testgen::torus_element(rng, t, 3);
    const Character th = testgen::character(rng, t, 12);
    for (const auto& g : symmetry_generators(t)) {
      EXPECT_EQ(evaluate(apply_symmetry(x, g), transport_character(t, th, g)), evaluate(x, th));
    }
    EXPECT_TRUE(is_invariant(symmetrize(x)));
  }
}

TEST(TorusProperty, TraceElementMatchesRepresentation) {
  auto p = params(6);
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& nu : nt::partitions(n)) {
      const Torus t(p, nu);
      for (int s = 0; s < 5; ++s) {
        const Character th = testgen::character(rng, t, 12);
        const auto mode = s % 2 ? kRect : kPlain;
        const SSRep rho = rho_of(t, th, mode);
        for (int e = 0; e <= 2; ++e) {
          for (int f = -6; f <= 6; ++f) {
            ASSERT_EQ(evaluate(trace_element(t, e, f, mode), th), trace_at(*p, rho, e, f))
                << partition_string(nu) << " e=" << e << " f=" << f;
          }
        }
      }
    }
  }
}

TEST(TorusProperty, ComparisonMatchesSplitCharacters) {
  auto p = params(6);
  std::mt19937_64 rng(34);
  struct Case {
    int n;
    int m;
  };
  for (const auto& c : {Case{2, 1}, Case{4, 2}, Case{4, 1}, Case{6, 2}, Case{6, 3}, Case{6, 1}}) {
    const Torus target(p, {c.n});
    const SplitSpec s = make_split({c.n}, 0, c.m);
    const Torus source(p, s.source);
    for (const auto& mode : {kRect, kPlain}) {
      for (int it = 0; it < 50; ++it) {
        const auto x = symmetrize(testgen::torus_element(rng, source, 3));
        const auto res = comparison_map(x, target, s, mode);
        EXPECT_TRUE(res.escaped.is_zero());
        // Invariance holds modulo the ideal generated by zeta^{ell^{a(m)}} - 1.
        const std::int64_t mod = p->torsion_order(c.m);
        for (const auto& g : symmetry_generators(target)) {
          EXPECT_EQ(reduce_torsion(apply_symmetry(res.image, g), 0, mod), reduce_torsion(res.image, 0, mod));
        }
        const Character th{{p->scale(c.m) * testgen::uniform(rng, 0, p->L() / p->scale(c.m) - 1)},
                           {testgen::root_of_unity(rng, 12)}};
        const auto sp = split_character(target, th, 0, c.m, mode);
        ASSERT_TRUE(sp.has_value());
        ASSERT_EQ(sp->first, s.source);
        EXPECT_EQ(evaluate(res.image, th), evaluate(x, sp->second))
            << "n=" << c.n << " m=" << c.m << " " << mode.name();
      }
    }
  }
}

}  // namespace
