#pragma once

// Hand-rolled generators shared by the unit and property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "curtis/cyclotomic.hpp"
#include "curtis/torus.hpp"

namespace curtis::testgen {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random element of Q(zeta_E) with small coefficients and denominator.
inline Cyclotomic cyclotomic(std::mt19937_64& rng, std::int64_t E, int bound = 5, int max_den = 4) {
  std::vector<mpz_class> num;
  for (std::int64_t i = 0; i < E; ++i) num.emplace_back(static_cast<long>(uniform(rng, -bound, bound)));
  return Cyclotomic::from_coeffs(E, std::move(num), static_cast<long>(uniform(rng, 1, max_den)));
}

/// Random element whose denominator is prime to ell.
inline Cyclotomic ell_integral(std::mt19937_64& rng, std::int64_t E, std::int64_t ell) {
  std::int64_t den = 1;
  do {
    den = uniform(rng, 1, 7);
  } while (den % ell == 0);
  std::vector<mpz_class> num;
  for (std::int64_t i = 0; i < E; ++i) num.emplace_back(static_cast<long>(uniform(rng, -6, 6)));
  return Cyclotomic::from_coeffs(E, std::move(num), static_cast<long>(den));
}

inline Cyclotomic root_of_unity(std::mt19937_64& rng, std::int64_t N) { return Cyclotomic::zeta(N, uniform(rng, 0, N - 1)); }

/// Random ell-ramified character with Frobenius values in mu_N.
inline Character character(std::mt19937_64& rng, const Torus& torus, std::int64_t N) {
  const TameParams& p = torus.params();
  Character th;
  for (int i = 0; i < torus.rank(); ++i) {
    const std::int64_t s = p.scale(torus.part(i));
    th.C.push_back(s * uniform(rng, 0, p.L() / s - 1));
    th.alpha.push_back(root_of_unity(rng, N));
  }
  return th;
}

/// Random torus ring element with |Q exponent| <= window.
inline TorusRingElem torus_element(std::mt19937_64& rng, const Torus& torus, int terms, int window = 1) {
  TorusRingElem x(torus);
  for (int k = 0; k < terms; ++k) {
    Monomial m = x.unit_monomial();
    for (int i = 0; i < torus.rank(); ++i) {
      m.qexp[i] = static_cast<int>(uniform(rng, -window, window));
      m.texp[i] = uniform(rng, 0, torus.torsion_order(i) - 1);
    }
    x.add_term(std::move(m), Cyclotomic::from_int(static_cast<long>(uniform(rng, -3, 3))));
  }
  return x;
}

}  // namespace curtis::testgen
