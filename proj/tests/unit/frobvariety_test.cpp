#include <gtest/gtest.h>

#include <random>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/frob.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"
#include "gen.hpp"

using namespace curtis;

namespace {

const ModeConfig kRect{Mode::rectified};
const ModeConfig kPlain{Mode::plain};

Mat<ModP> fp(std::int64_t r, std::vector<std::vector<std::int64_t>> rows) {
  Mat<ModP> m(rows.size(), rows.size(), ModP(0, r));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = ModP(rows[i][j], r);
  }
  return m;
}

Mat<Cyclotomic> cyc(std::vector<std::vector<long>> rows) {
  Mat<Cyclotomic> m(rows.size(), rows.size(), Cyclotomic(1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = Cyclotomic::from_int(rows[i][j]);
  }
  return m;
}

InvariantFn sample_invariant() {
  return InvariantFn::trace(Word::parse("s f^2 s^-1")) * InvariantFn::trace(Word::sf(1, 1)) +
         InvariantFn::det_fr(-1) + InvariantFn::trace(Word::parse("f^-1 s^2 f s")).scaled(3) +
         InvariantFn::constant(2);
}

TEST(Points, DegreeOneCounts) {
  struct Case {
    std::int64_t r;
    std::int64_t q;
    std::size_t count;
  };
  for (const auto& c : {Case{7, 4, 18}, Case{7, 3, 12}, Case{5, 3, 8}}) {
    EXPECT_EQ(enumerate_points(c.r, 1, c.q, true).count, c.count) << c.r << " " << c.q;
  }
}

TEST(Points, GoldenCountsOverSeven) {
  const auto a = enumerate_points(7, 2, 2, true);
  EXPECT_TRUE(a.exhaustive);
  EXPECT_EQ(a.count, 6048u);
  const auto b = enumerate_points(7, 2, 5, true);
  EXPECT_EQ(b.count, 16128u);
  const auto rep = classifier_consistency(b.points, 2, 5);
  EXPECT_TRUE(rep.pass()) << rep.witness;
  EXPECT_EQ(rep.in_component, 12096u);
}

TEST(Points, IdentityPairAndSampling) {
  const FpPoint id{Mat<ModP>::identity(2, ModP(0, 7)), Mat<ModP>::identity(2, ModP(0, 7))};
  EXPECT_TRUE(id.satisfies(2));
  EXPECT_TRUE(in_identity_component(id, 3, 2));
  const auto s = enumerate_points(11, 3, 2, false, 40, 5);
  EXPECT_FALSE(s.exhaustive);
  EXPECT_FALSE(s.points.empty());
  for (const auto& p : s.points) EXPECT_TRUE(p.satisfies(2));
}

TEST(Classifier, Examples) {
  // n = 1, q = 7, ell = 3: sigma = 3 has order 6 in F_7.
  const FpPoint p1{fp(7, {{1}}), fp(7, {{3}})};
  ASSERT_TRUE(p1.satisfies(7));
  EXPECT_FALSE(in_identity_component(p1, 3, 7));
  EXPECT_FALSE(eigenvalue_criterion(p1, 3));

  // n = 2, q = 2, ell = 3: sigma of order 3 swapped by Fr.
  const FpPoint p2{fp(7, {{0, 1}, {1, 0}}), fp(7, {{2, 0}, {0, 4}})};
  ASSERT_TRUE(p2.satisfies(2));
  EXPECT_TRUE(in_identity_component(p2, 3, 2));
  EXPECT_TRUE(eigenvalue_criterion(p2, 3));

  const FpPoint id{Mat<ModP>::identity(2, ModP(0, 7)), Mat<ModP>::identity(2, ModP(0, 7))};
  const auto rep = classifier_consistency({id, p2}, 3, 2, 20, 9);
  EXPECT_TRUE(rep.pass()) << rep.witness;
  EXPECT_EQ(rep.in_component, 2u);
}

TEST(Semisimplify, DiagonalPointIsItsOwnFactors) {
  const FpPoint p{fp(7, {{3, 0}, {0, 5}}), fp(7, {{1, 0}, {0, 1}})};
  const auto ss = semisimplify(p);
  EXPECT_EQ(ss.factors.size(), 2u);
  EXPECT_TRUE(ss.point.satisfies(2));
  EXPECT_EQ(char_poly(ss.point.Fr), char_poly(p.Fr));
}

TEST(Semisimplify, UnipotentSigmaOverCyclotomics) {
  // Fr sigma Fr^-1 = sigma^q forces Fr = diag(q y, y).
  const TameParams params(3, 2, 2);
  const CycPoint p{cyc({{2, 0}, {0, 1}}), cyc({{1, 1}, {0, 1}})};
  ASSERT_TRUE(p.satisfies(2));
  EXPECT_TRUE(in_identity_component(p, 3, 2));
  const auto ss = semisimplify(p, 2, params, 12);
  ASSERT_TRUE(ss.rep.has_value());
  ASSERT_EQ(ss.rep->pieces().size(), 2u);
  for (const auto& r : ss.rep->pieces()) EXPECT_EQ(r.orbit, (InertiaOrbit{0, 1}));
  EXPECT_TRUE(ss.point.satisfies(2));
  EXPECT_EQ(ss.point.sigma, Mat<Cyclotomic>::identity(2, Cyclotomic(1)));
}

TEST(Semisimplify, LimitConstruction) {
  // Conjugating by diag(1, t) scales the nilpotent part by 1/t; the orbit closure
  // contains the semisimple point (diag(2, 1), I).
  const CycPoint p{cyc({{2, 0}, {0, 1}}), cyc({{1, 1}, {0, 1}})};
  const InvariantFn inv = sample_invariant();
  const Cyclotomic value = inv.evaluate(p);
  for (long t : {2L, 10L, 1000L}) {
    const Mat<Cyclotomic> g = Mat<Cyclotomic>::diagonal({Cyclotomic::from_int(1), Cyclotomic::from_int(t)}, Cyclotomic(1));
    const CycPoint pt = p.conjugate(g, *g.inverse());
    EXPECT_TRUE(pt.satisfies(2));
    EXPECT_EQ(pt.sigma(0, 1), Cyclotomic::from_rational(Rational(1, t)));
    EXPECT_EQ(inv.evaluate(pt), value);
  }
  const CycPoint limit{cyc({{2, 0}, {0, 1}}), cyc({{1, 0}, {0, 1}})};
  EXPECT_EQ(inv.evaluate(limit), value);
}

TEST(Semisimplify, NeedsLargerConductor) {
  const TameParams params(3, 2, 2);
  const CycPoint p{cyc({{0, 1}, {1, 0}}), Mat<Cyclotomic>::diagonal({Cyclotomic::zeta(3), Cyclotomic::zeta(3, 2)}, Cyclotomic(1))};
  ASSERT_TRUE(p.satisfies(2));
  EXPECT_THROW(semisimplify(p, 2, params, 1), ConductorError);
  EXPECT_NO_THROW(semisimplify(p, 2, params, 3));
}

TEST(Words, ParseAndPrint) {
  EXPECT_EQ(Word::parse("s^1 f^0").to_string(), "s^1");
  EXPECT_EQ(Word::parse("sigma*Fr^2*Fr^-2").to_string(), "s^1");
  EXPECT_EQ(Word::parse("f f s^-1").to_string(), "f^2 s^-1");
  EXPECT_EQ(Word::parse("").to_string(), "1");
  EXPECT_THROW(Word::parse("x^2"), DomainError);
  EXPECT_THROW(Word::parse("s^"), DomainError);
}

TEST(Restriction, DegreeTwoCycle) {
  auto p = std::make_shared<const TameParams>(3, 2, 2);
  const Torus t(p, {2});
  for (const auto& mode : {kRect, kPlain}) {
    EXPECT_TRUE(restrict_invariant_to_Xw(InvariantFn::trace(Word::sf(0, 1)), t, mode).is_zero());
    EXPECT_EQ(restrict_invariant_to_Xw(InvariantFn::trace(Word::sf(0, 2)), t, mode), trace_element(t, 0, 2, mode));
    EXPECT_EQ(restrict_invariant_to_Xw(InvariantFn::trace(Word::sf(1, 0)), t, mode),
              TorusRingElem::zeta(t, 0) + TorusRingElem::zeta(t, 0, 2));
  }
}

TEST(Restriction, DetInPlainModeIsCoherentButNotQ) {
  auto p = std::make_shared<const TameParams>(3, 2, 2);
  const auto det = invariant_to_A(InvariantFn::det_fr(), p, 2, kPlain);
  const auto Q = unit_Q(p, 2, kPlain);
  EXPECT_NE(det, Q);
  EXPECT_EQ(det.at({2}), -Q.at({2}));
  EXPECT_EQ(det.at({1, 1}), Q.at({1, 1}));
  EXPECT_TRUE(is_coherent(det).coherent);
  EXPECT_FALSE(is_coherent(Q).coherent);
  EXPECT_EQ(invariant_to_A(InvariantFn::det_fr(), p, 2, kRect), unit_Q(p, 2, kRect));
}

TEST(Keystone, TraceWordsMatchTraceTuples) {
  for (const auto& mode : {kRect, kPlain}) {
    for (int n = 1; n <= 4; ++n) {
      auto p = std::make_shared<const TameParams>(3, 2, n);
      for (int e = -1; e <= 2; ++e) {
        for (int f = -4; f <= 4; ++f) {
          EXPECT_EQ(invariant_to_A(InvariantFn::trace(Word::sf(e, f)), p, n, mode), trace_tuple(p, n, e, f, mode))
              << mode.name() << " n=" << n << " e=" << e << " f=" << f;
        }
      }
      const auto det = invariant_to_A(InvariantFn::det_fr(), p, n, mode);
      const auto Q = unit_Q(p, n, mode);
      for (const auto& [nu, x] : det.components()) {
        long sign = 1;
        for (int d : nu) {
          if (mode.mode == Mode::plain && d % 2 == 0) sign = -sign;
        }
        EXPECT_EQ(x, Q.at(nu).scaled(Cyclotomic::from_int(sign))) << mode.name() << " " << partition_string(nu);
      }
    }
  }
}

// Properties.

TEST(FrobProperty, InvariantsAreConjugationInvariant) {
  std::mt19937_64 rng(61);
  const auto pts = enumerate_points(5, 2, 2, true);
  const InvariantFn inv = sample_invariant();
  for (int it = 0; it < 100; ++it) {
    const FpPoint& p = pts.points[rng() % pts.points.size()];
    const Mat<ModP> g = random_invertible(5, 2, rng);
    const FpPoint c = p.conjugate(g, *g.inverse());
    EXPECT_TRUE(c.satisfies(2));
    EXPECT_EQ(inv.evaluate(c), inv.evaluate(p));
  }
}

TEST(FrobProperty, SemisimplifyIsIdempotentAndTracePreserving) {
  std::mt19937_64 rng(62);
  const auto pts = enumerate_points(7, 2, 2, true);
  const std::vector<Word> words{Word::sf(1, 0), Word::sf(0, 1), Word::sf(1, 1), Word::parse("s f^2 s^-1 f^-1"),
                                Word::sf(2, -1)};
  for (int it = 0; it < 200; ++it) {
    const FpPoint& p = pts.points[rng() % pts.points.size()];
    const auto ss = semisimplify(p);
    ASSERT_TRUE(ss.point.satisfies(2));
    const auto again = semisimplify(ss.point);
    EXPECT_EQ(again.factors.size(), ss.factors.size());
    EXPECT_EQ(char_poly(again.point.Fr), char_poly(ss.point.Fr));
    EXPECT_EQ(char_poly(again.point.sigma), char_poly(ss.point.sigma));
    for (const auto& w : words) EXPECT_EQ(word_matrix(w, ss.point).trace(), word_matrix(w, p).trace());
    EXPECT_EQ(in_identity_component(ss.point, 3, 2), in_identity_component(p, 3, 2));
  }
}

TEST(FrobProperty, XwPointsRealizeCharacters) {
  std::mt19937_64 rng(63);
  const InvariantFn inv = sample_invariant();
  for (const auto& mode : {kRect, kPlain}) {
    for (int n = 1; n <= 3; ++n) {
      auto p = std::make_shared<const TameParams>(3, 2, n);
      const std::int64_t E = std::lcm<std::int64_t>(p->L(), 24 * n);
      for (const auto& nu : relevant_partitions(*p, n)) {
        const Torus t(p, nu);
        const auto rinv = restrict_invariant_to_Xw(inv, t, mode);
        for (int s = 0; s < 10; ++s) {
          const Character th = testgen::character(rng, t, 12);
          const CycPoint pt = xw_point(t, th, mode);
          ASSERT_TRUE(pt.satisfies(2));
          EXPECT_EQ(evaluate(rinv, th), inv.evaluate(pt));
          const auto ss = semisimplify(pt, 2, *p, E);
          ASSERT_TRUE(ss.rep.has_value());
          EXPECT_EQ(*ss.rep, rho_of(t, th, mode)) << partition_string(nu);
        }
      }
    }
  }
}

}  // namespace
