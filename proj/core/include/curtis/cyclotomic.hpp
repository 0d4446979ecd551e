#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curtis/linalg.hpp"

namespace curtis {

/// Coefficients of the E-th cyclotomic polynomial, lowest degree first. Cached.
const std::vector<mpz_class>& cyclotomic_polynomial(std::int64_t E);

/// A root of unity zeta_order^exponent with gcd(exponent, order) = 1.
struct RootOfUnity {
  std::int64_t order = 1;
  std::int64_t exponent = 0;
};

/// Element of Q(zeta_E) in canonical form.
///
/// Stored as num(x) / den with num reduced modulo Phi_E, den > 0 and
/// gcd(content(num), den) = 1. Binary operations between different conductors
/// embed both operands into the lcm conductor first.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::int64_t conductor);

  static Cyclotomic from_int(long value, std::int64_t conductor = 1);
  static Cyclotomic from_rational(const Rational& value, std::int64_t conductor = 1);
  /// zeta_order^k, with zeta_m = exp(2 pi i / m).
  static Cyclotomic zeta(std::int64_t order, std::int64_t k = 1);
  /// Builds from numerator coefficients in the power basis of zeta_E (any length).
  static Cyclotomic from_coeffs(std::int64_t conductor, std::vector<mpz_class> num, mpz_class den = 1);

  std::int64_t conductor() const { return conductor_; }
  const std::vector<mpz_class>& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  bool is_rational() const { return num_.size() <= 1; }
  Rational rational_value() const;

  Cyclotomic embed(std::int64_t target) const;
  Cyclotomic operator-() const;
  Cyclotomic inverse() const;
  Cyclotomic pow(std::int64_t k) const;
  /// Complex conjugation zeta -> zeta^{-1}.
  Cyclotomic conj() const;
  /// Galois action zeta_E -> zeta_E^k (gcd(k, E) = 1).
  Cyclotomic galois(std::int64_t k) const;
  /// Multiplication by zeta_order^k.
  Cyclotomic times_zeta(std::int64_t order, std::int64_t k) const;

  /// Coordinates in the power basis of Q(zeta_target) (target divisible by the conductor).
  RationalVector coordinates(std::int64_t target) const;

  /// If this is a root of unity, its order and exponent.
  std::optional<RootOfUnity> as_root_of_unity() const;

  /// Smallest conductor E' dividing the current one such that the element lies in Q(zeta_E').
  Cyclotomic minimize() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Human-readable form in terms of z = zeta_E, e.g. "z^2 + 1" or "(z - 1)/3".
  std::string to_string() const;

 private:
  void canonicalize();

  std::int64_t conductor_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

/// Sum of terms c * zeta_E^k accumulated in Z[x]/(x^E - 1), reduced once at the end.
class CycAccumulator {
 public:
  explicit CycAccumulator(std::int64_t conductor);
  std::int64_t conductor() const { return conductor_; }
  void add_zeta(std::int64_t k, const mpz_class& coeff = 1);
  /// Adds c * zeta_E^shift * value (value's conductor must divide E).
  void add_scaled(const Cyclotomic& value, std::int64_t shift, const mpz_class& coeff = 1);
  Cyclotomic result() const;

 private:
  std::int64_t conductor_;
  std::vector<mpz_class> slots_;
  mpz_class den_ = 1;
};

/// The k distinct k-th roots of a root of unity alpha inside Q(zeta_E).
/// Throws ConductorError naming k*ord(alpha) when E is too small.
std::vector<Cyclotomic> kth_roots(const Cyclotomic& alpha, std::int64_t k, std::int64_t E);

/// Coordinates of several elements in a common power basis.
std::int64_t common_conductor(const std::vector<Cyclotomic>& values);

}  // namespace curtis
