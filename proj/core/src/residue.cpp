#include <algorithm>
#include <cmath>

#include "curtis/ell_local.hpp"
#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

namespace {

using ModPoly = std::vector<std::int64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo monic b over F_ell.
ModPoly rem_monic(ModPoly a, const ModPoly& b, std::int64_t ell) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = nt::mod(a[i - db + j] - c * b[j], ell);
  }
  if (a.size() > db) a.resize(db);
  trim(a);
  return a;
}

}  // namespace

ResidueMap::ResidueMap(std::int64_t conductor, std::int64_t ell, std::size_t factor_index)
    : conductor_(conductor), ell_(ell) {
  if (!nt::is_prime(ell)) throw DomainError("ResidueMap: ell must be prime");
  const std::int64_t free_part = nt::prime_free_part(conductor, ell);
  const int f = static_cast<int>(nt::mult_order(ell, free_part));
  const double size = std::pow(static_cast<double>(ell), f);
  if (size > 1e6) throw GuardError("ResidueMap: residue field larger than 10^6");

  ModPoly phi;
  for (const auto& c : cyclotomic_polynomial(conductor)) {
    phi.push_back(nt::mod(c.get_si(), ell));
  }
  std::vector<ModPoly> factors;
  const std::int64_t count = nt::ipow(ell, f);
  for (std::int64_t code = 0; code < count; ++code) {
    ModPoly g(static_cast<std::size_t>(f) + 1);
    std::int64_t c = code;
    for (int i = 0; i < f; ++i) {
      g[i] = c % ell;
      c /= ell;
    }
    g[f] = 1;
    if (rem_monic(phi, g, ell).empty()) factors.push_back(g);
  }
  std::sort(factors.begin(), factors.end());
  factor_count_ = factors.size();
  if (factor_index >= factors.size()) throw DomainError("ResidueMap: factor index out of range");
  g_ = factors[factor_index];
}

ResidueElem ResidueMap::normalize(std::vector<std::int64_t> v) const {
  for (auto& c : v) c = nt::mod(c, ell_);
  return rem_monic(std::move(v), g_, ell_);
}

ResidueElem ResidueMap::reduce(const Cyclotomic& a) const {
  if (conductor_ % a.conductor() != 0) throw DomainError("ResidueMap: conductor mismatch");
  if (!is_ell_integral(a, ell_)) throw DomainError("ResidueMap: element is not ell-integral");
  const Cyclotomic e = a.embed(conductor_);
  const std::int64_t dinv = nt::inverse_mod(mpz_class(e.denominator() % ell_).get_si(), ell_);
  ModPoly v;
  for (const auto& c : e.numerator()) {
    mpz_class r = c % ell_;
    v.push_back(nt::mulmod(r.get_si(), dinv, ell_));
  }
  return normalize(std::move(v));
}

ResidueElem ResidueMap::add(const ResidueElem& a, const ResidueElem& b) const {
  ModPoly v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] += b[i];
  return normalize(std::move(v));
}

ResidueElem ResidueMap::mul(const ResidueElem& a, const ResidueElem& b) const {
  if (a.empty() || b.empty()) return {};
  ModPoly v(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) v[i + j] = nt::mod(v[i + j] + a[i] * b[j], ell_);
  }
  return normalize(std::move(v));
}

}  // namespace curtis
