#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "curtis/cyclotomic.hpp"
#include "curtis/ell_local.hpp"
#include "curtis/errors.hpp"
#include "gen.hpp"

using namespace curtis;

namespace {

TEST(Cyclotomic, ThirdRootsSumToZero) {
  const Cyclotomic z = Cyclotomic::zeta(3);
  EXPECT_TRUE((z + z * z + Cyclotomic::from_int(1)).is_zero());
}

TEST(Cyclotomic, SixthRootIsMinusCubeRootSquared) {
  const Cyclotomic z6 = Cyclotomic::zeta(6);
  const Cyclotomic rhs = -Cyclotomic::zeta(3, 2);
  EXPECT_EQ(z6, rhs);
  EXPECT_EQ(z6.embed(6), rhs.embed(6));
  EXPECT_EQ(z6.embed(12), rhs.embed(36));
}

TEST(Cyclotomic, CanonicalForm) {
  const Cyclotomic x = Cyclotomic::from_coeffs(5, {2, 4, 6}, 4);
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ(x, Cyclotomic::from_coeffs(5, {1, 2, 3}, 2));
  // 1 + z + z^2 + z^3 + z^4 = 0 in Q(zeta_5).
  EXPECT_TRUE(Cyclotomic::from_coeffs(5, {1, 1, 1, 1, 1}).is_zero());
}

TEST(Cyclotomic, InverseAndRootOfUnity) {
  const Cyclotomic z = Cyclotomic::zeta(12, 5);
  EXPECT_TRUE((z * z.inverse()).is_one());
  const auto r = z.as_root_of_unity();
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->order, 12);
  EXPECT_EQ(r->exponent, 5);
  EXPECT_FALSE(Cyclotomic::from_int(2).as_root_of_unity().has_value());
  EXPECT_THROW(Cyclotomic(7).inverse(), DomainError);
}

TEST(Cyclotomic, Minimize) {
  EXPECT_EQ(Cyclotomic::zeta(3).embed(36).minimize().conductor(), 3);
  EXPECT_EQ(Cyclotomic::zeta(4, 2).minimize().conductor(), 1);
}

TEST(EllLocal, InverseOfTwoAtThree) {
  const EllLocal two = EllLocal::from_int(2, 3);
  EXPECT_TRUE(two.is_unit());
  const EllLocal half = two.inverse();
  EXPECT_EQ(half.value().denominator(), 2);
  EXPECT_EQ(half.value(), Cyclotomic::from_rational(Rational(1, 2)));
  EXPECT_FALSE(EllLocal::from_int(3, 3).is_unit());
  EXPECT_THROW(EllLocal::from_int(3, 3).inverse(), DomainError);
  EXPECT_THROW(EllLocal(Cyclotomic::from_rational(Rational(1, 3)), 3), DomainError);
}

TEST(KthRoots, SquareRootsOfOne) {
  auto roots = kth_roots(Cyclotomic::from_int(1), 2, 12);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_TRUE(std::count(roots.begin(), roots.end(), Cyclotomic::from_int(1)) == 1);
  EXPECT_TRUE(std::count(roots.begin(), roots.end(), Cyclotomic::from_int(-1)) == 1);
}

TEST(KthRoots, CubeRootsOfZeta3) {
  const auto roots = kth_roots(Cyclotomic::zeta(3), 3, 9);
  ASSERT_EQ(roots.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    const Cyclotomic want = Cyclotomic::zeta(9) * Cyclotomic::zeta(3, j);
    EXPECT_EQ(std::count(roots.begin(), roots.end(), want), 1) << j;
  }
}

TEST(KthRoots, SquareRootsOfMinusOne) {
  const auto roots = kth_roots(Cyclotomic::from_int(-1), 2, 4);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(std::count(roots.begin(), roots.end(), Cyclotomic::zeta(4)), 1);
  EXPECT_EQ(std::count(roots.begin(), roots.end(), -Cyclotomic::zeta(4)), 1);
}

TEST(KthRoots, ConductorTooSmallNamesMinimum) {
  try {
    kth_roots(Cyclotomic::from_int(-1), 2, 6);
    FAIL() << "expected ConductorError";
  } catch (const ConductorError& e) {
    EXPECT_EQ(e.minimal_conductor(), 4);
  }
}

TEST(Residue, Examples) {
  const ResidueMap m1(1, 3);
  EXPECT_EQ(m1.reduce(Cyclotomic::from_int(3)), ResidueElem{});
  EXPECT_EQ(m1.reduce(Cyclotomic::from_rational(Rational(1, 2))), ResidueElem{2});

  const ResidueMap m4(4, 3);
  EXPECT_EQ(m4.factor(), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(m4.reduce(Cyclotomic::zeta(4)), (ResidueElem{0, 1}));
}

// Properties.

TEST(CyclotomicProperty, EmbeddingsCommuteWithArithmetic) {
  std::mt19937_64 rng(11);
  const std::vector<std::int64_t> conductors{1, 3, 4, 5, 8, 9, 12, 15};
  for (int it = 0; it < 300; ++it) {
    const std::int64_t E1 = conductors[rng() % conductors.size()];
    const std::int64_t E2 = conductors[rng() % conductors.size()];
    const Cyclotomic a = testgen::cyclotomic(rng, E1);
    const Cyclotomic b = testgen::cyclotomic(rng, E2);
    const std::int64_t big = std::lcm(E1, E2) * 2;
    EXPECT_EQ((a + b).embed(big), a.embed(big) + b.embed(big));
    EXPECT_EQ((a * b).embed(big), a.embed(big) * b.embed(big));
    EXPECT_EQ(a.embed(big).minimize(), a.minimize());
  }
}

TEST(CyclotomicProperty, FieldAxioms) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 300; ++it) {
    const std::int64_t E = testgen::uniform(rng, 1, 24);
    const Cyclotomic a = testgen::cyclotomic(rng, E);
    const Cyclotomic b = testgen::cyclotomic(rng, E);
    const Cyclotomic c = testgen::cyclotomic(rng, E);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    EXPECT_EQ(a.conj().conj(), a);
  }
}

TEST(CyclotomicProperty, GaloisIsRingMap) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const std::int64_t E = 12;
    std::int64_t k = 1;
    do {
      k = testgen::uniform(rng, 1, E - 1);
    } while (std::gcd(k, E) != 1);
    const Cyclotomic a = testgen::cyclotomic(rng, E);
    const Cyclotomic b = testgen::cyclotomic(rng, E);
    EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
    EXPECT_EQ((a + b).galois(k), a.galois(k) + b.galois(k));
  }
}

TEST(KthRootsProperty, MembersAreDistinctRoots) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 200; ++it) {
    const std::int64_t ord = testgen::uniform(rng, 1, 6);
    const std::int64_t k = testgen::uniform(rng, 1, 4);
    const Cyclotomic alpha = testgen::root_of_unity(rng, ord);
    const auto roots = kth_roots(alpha, k, k * ord * testgen::uniform(rng, 1, 2));
    ASSERT_EQ(static_cast<std::int64_t>(roots.size()), k);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_EQ(roots[i].pow(k), alpha);
      for (std::size_t j = i + 1; j < roots.size(); ++j) EXPECT_NE(roots[i], roots[j]);
    }
  }
}

TEST(ResidueProperty, ReductionIsRingMap) {
  std::mt19937_64 rng(15);
  struct Setup {
    std::int64_t E;
    std::int64_t ell;
  };
  for (const auto& s : {Setup{4, 3}, Setup{12, 5}, Setup{9, 2}, Setup{7, 2}, Setup{8, 3}}) {
    const ResidueMap m(s.E, s.ell, rng() % ResidueMap(s.E, s.ell).factor_count());
    for (int it = 0; it < 1000 / 5; ++it) {
      const Cyclotomic a = testgen::ell_integral(rng, s.E, s.ell);
      const Cyclotomic b = testgen::ell_integral(rng, s.E, s.ell);
      EXPECT_EQ(m.reduce(a + b), m.add(m.reduce(a), m.reduce(b)));
      EXPECT_EQ(m.reduce(a * b), m.mul(m.reduce(a), m.reduce(b)));
    }
  }
}

}  // namespace
