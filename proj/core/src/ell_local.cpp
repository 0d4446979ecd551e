#include "curtis/ell_local.hpp"

#include "curtis/errors.hpp"

namespace curtis {

bool is_ell_integral(const Cyclotomic& x, std::int64_t ell) {
  return mpz_divisible_ui_p(x.denominator().get_mpz_t(), static_cast<unsigned long>(ell)) == 0;
}

Rational field_norm(const Cyclotomic& x) {
  const std::int64_t E = x.conductor();
  const std::size_t n = cyclotomic_polynomial(E).size() - 1;
  RationalMatrix m(n, n);
  Cyclotomic col = x;
  const Cyclotomic z = Cyclotomic::zeta(E, 1);
  for (std::size_t j = 0; j < n; ++j) {
    const RationalVector c = col.coordinates(E);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
    col *= z;
  }
  return m.determinant();
}

EllLocal::EllLocal(Cyclotomic value, std::int64_t ell) : value_(std::move(value)), ell_(ell) {
  if (!is_ell_integral(value_, ell_)) {
    throw DomainError("EllLocal: denominator divisible by ell");
  }
}

bool EllLocal::is_unit() const {
  if (value_.is_zero()) return false;
  const Rational nrm = field_norm(value_);
  return mpz_divisible_ui_p(nrm.get_num_mpz_t(), static_cast<unsigned long>(ell_)) == 0;
}

EllLocal EllLocal::inverse() const {
  if (value_.is_zero()) throw DomainError("EllLocal: division by zero");
  if (!is_unit()) throw DomainError("EllLocal: inverting an element whose norm is divisible by ell");
  return EllLocal(value_.inverse(), ell_);
}

EllLocal operator+(const EllLocal& a, const EllLocal& b) { return EllLocal(a.value_ + b.value_, a.ell_); }
EllLocal operator-(const EllLocal& a, const EllLocal& b) { return EllLocal(a.value_ - b.value_, a.ell_); }
EllLocal operator*(const EllLocal& a, const EllLocal& b) { return EllLocal(a.value_ * b.value_, a.ell_); }

}  // namespace curtis
