#pragma once

#include <cstdint>
#include <vector>

#include "curtis/cyclotomic.hpp"

namespace curtis {

/// Whether every denominator of x is prime to ell.
bool is_ell_integral(const Cyclotomic& x, std::int64_t ell);

/// Norm from Q(zeta_E) to Q (E = conductor of x).
Rational field_norm(const Cyclotomic& x);

/// Element of Z_(ell)[zeta_E]: a cyclotomic number whose denominator is prime to ell.
class EllLocal {
 public:
  EllLocal(Cyclotomic value, std::int64_t ell);
  static EllLocal from_int(long v, std::int64_t ell) { return EllLocal(Cyclotomic::from_int(v), ell); }

  const Cyclotomic& value() const { return value_; }
  std::int64_t ell() const { return ell_; }

  /// Unit test in Z_(ell)[zeta]: the norm is prime to ell.
  bool is_unit() const;
  EllLocal inverse() const;

  EllLocal operator-() const { return EllLocal(-value_, ell_); }
  friend EllLocal operator+(const EllLocal& a, const EllLocal& b);
  friend EllLocal operator-(const EllLocal& a, const EllLocal& b);
  friend EllLocal operator*(const EllLocal& a, const EllLocal& b);
  friend EllLocal operator/(const EllLocal& a, const EllLocal& b) { return a * b.inverse(); }
  friend bool operator==(const EllLocal& a, const EllLocal& b) { return a.value_ == b.value_; }

 private:
  Cyclotomic value_;
  std::int64_t ell_;
};

/// Element of F_ell[x]/(g), coefficients lowest degree first.
using ResidueElem = std::vector<std::int64_t>;

/// Reduction Z_(ell)[zeta_E] -> F_ell[x]/(g) for a monic irreducible factor g of Phi_E mod ell.
///
/// Factors are the monic divisors of degree ord_{E'}(ell) (E' the ell-free part of E),
/// sorted lexicographically on their coefficient vectors; factor_index picks one.
class ResidueMap {
 public:
  ResidueMap(std::int64_t conductor, std::int64_t ell, std::size_t factor_index = 0);

  std::int64_t conductor() const { return conductor_; }
  std::int64_t ell() const { return ell_; }
  const std::vector<std::int64_t>& factor() const { return g_; }
  std::size_t factor_count() const { return factor_count_; }
  int degree() const { return static_cast<int>(g_.size()) - 1; }

  ResidueElem reduce(const Cyclotomic& a) const;
  ResidueElem reduce(const EllLocal& a) const { return reduce(a.value()); }

  ResidueElem add(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem mul(const ResidueElem& a, const ResidueElem& b) const;

 private:
  ResidueElem normalize(std::vector<std::int64_t> v) const;

  std::int64_t conductor_;
  std::int64_t ell_;
  std::vector<std::int64_t> g_;
  std::size_t factor_count_ = 0;
};

}  // namespace curtis
