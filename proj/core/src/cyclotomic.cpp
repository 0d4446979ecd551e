#include "curtis/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

namespace {

using Poly = std::vector<mpz_class>;

std::mutex g_cache_mutex;
std::map<std::int64_t, std::unique_ptr<Poly>> g_phi_cache;
std::map<std::int64_t, std::unique_ptr<std::vector<Poly>>> g_zeta_powers;

// Exact division of a by monic b over Z.
Poly divide_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  Poly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    mpz_class c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

Poly compute_phi(std::int64_t E) {
  Poly p(static_cast<std::size_t>(E) + 1);
  p[0] = -1;
  p[E] = 1;
  for (std::int64_t d = 1; d < E; ++d) {
    if (E % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  }
  return p;
}

void reduce_mod_phi(Poly& v, std::int64_t E) {
  const Poly& phi = cyclotomic_polynomial(E);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > deg;) {
    if (v[i] == 0) continue;
    mpz_class c = v[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) v[i - deg + j] -= c * phi[j];
    }
    v[i] = 0;
  }
  if (v.size() > deg) v.resize(deg);
}

// Canonical numerators of zeta_E^j for j in [0, E).
const std::vector<Poly>& zeta_powers(std::int64_t E) {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_zeta_powers.find(E);
    if (it != g_zeta_powers.end()) return *it->second;
  }
  auto table = std::make_unique<std::vector<Poly>>();
  for (std::int64_t j = 0; j < E; ++j) {
    table->push_back(Cyclotomic::zeta(E, j).numerator());
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_zeta_powers.emplace(E, std::move(table));
  return *it->second;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(std::int64_t E) {
  if (E < 1) throw DomainError("cyclotomic_polynomial: conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_phi_cache.find(E);
    if (it != g_phi_cache.end()) return *it->second;
  }
  auto poly = std::make_unique<Poly>(compute_phi(E));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_phi_cache.emplace(E, std::move(poly));
  return *it->second;
}

Cyclotomic::Cyclotomic(std::int64_t conductor) : conductor_(conductor), den_(1) {
  if (conductor < 1) throw DomainError("Cyclotomic: conductor must be positive");
}

Cyclotomic Cyclotomic::from_int(long value, std::int64_t conductor) {
  Cyclotomic c(conductor);
  if (value != 0) c.num_.push_back(mpz_class(value));
  return c;
}

Cyclotomic Cyclotomic::from_rational(const Rational& value, std::int64_t conductor) {
  Cyclotomic c(conductor);
  if (value != 0) {
    c.num_.push_back(value.get_num());
    c.den_ = value.get_den();
  }
  return c;
}

Cyclotomic Cyclotomic::zeta(std::int64_t order, std::int64_t k) {
  Poly v(static_cast<std::size_t>(order));
  v[nt::mod(k, order)] = 1;
  return from_coeffs(order, std::move(v));
}

Cyclotomic Cyclotomic::from_coeffs(std::int64_t conductor, std::vector<mpz_class> num, mpz_class den) {
  if (den == 0) throw DomainError("Cyclotomic: zero denominator");
  Cyclotomic c(conductor);
  c.num_ = std::move(num);
  c.den_ = std::move(den);
  c.canonicalize();
  return c;
}

void Cyclotomic::canonicalize() {
  reduce_mod_phi(num_, conductor_);
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

bool Cyclotomic::is_one() const {
  return num_.size() == 1 && num_[0] == 1 && den_ == 1;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw DomainError("Cyclotomic: value is not rational");
  if (num_.empty()) return 0;
  Rational r(num_[0], den_);
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::embed(std::int64_t target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0) throw DomainError("Cyclotomic::embed: target not a multiple of conductor");
  const std::int64_t step = target / conductor_;
  Poly v(num_.empty() ? 0 : (num_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < num_.size(); ++i) v[i * step] = num_[i];
  return from_coeffs(target, std::move(v), den_);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.conductor_ != conductor_) {
    const std::int64_t L = std::lcm(conductor_, o.conductor_);
    *this = embed(L);
    return *this += o.embed(L);
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const mpz_class d = den_ * o.den_;
  if (num_.size() < o.num_.size()) num_.resize(o.num_.size());
  for (auto& c : num_) c *= o.den_;
  for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i] * den_;
  den_ = d;
  canonicalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.conductor_ != conductor_) {
    const std::int64_t L = std::lcm(conductor_, o.conductor_);
    *this = embed(L);
    return *this *= o.embed(L);
  }
  if (is_zero() || o.is_zero()) {
    num_.clear();
    den_ = 1;
    return *this;
  }
  Poly prod(num_.size() + o.num_.size() - 1);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < o.num_.size(); ++j) prod[i + j] += num_[i] * o.num_[j];
  }
  num_ = std::move(prod);
  den_ *= o.den_;
  canonicalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) return a.den_ == b.den_ && a.num_ == b.num_;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.is_rational() && b.is_rational()) return a.den_ == b.den_ && a.num_ == b.num_;
  const std::int64_t L = std::lcm(a.conductor_, b.conductor_);
  return a.embed(L) == b.embed(L);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("Cyclotomic: division by zero");
  std::size_t nonzero = 0, where = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] != 0) {
      ++nonzero;
      where = i;
    }
  }
  if (nonzero == 1) {
    Poly v(static_cast<std::size_t>(conductor_));
    v[(conductor_ - static_cast<std::int64_t>(where)) % conductor_] = den_;
    return from_coeffs(conductor_, std::move(v), num_[where]);
  }
  // Solve a * x = 1 through the multiplication matrix on the power basis.
  const std::size_t n = cyclotomic_polynomial(conductor_).size() - 1;
  RationalMatrix m(n, n);
  Cyclotomic col = *this;
  const Cyclotomic z = zeta(conductor_, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < col.num_.size(); ++i) {
      m(i, j) = Rational(col.num_[i], col.den_);
      m(i, j).canonicalize();
    }
    col *= z;
  }
  RationalVector rhs(n);
  rhs[0] = 1;
  auto sol = m.solve(rhs);
  if (!sol) throw DomainError("Cyclotomic: singular multiplication matrix");
  mpz_class common = 1;
  for (const auto& x : *sol) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), x.get_den_mpz_t());
  Poly v(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational scaled = (*sol)[i] * common;
    v[i] = scaled.get_num();
  }
  return from_coeffs(conductor_, std::move(v), common);
}

Cyclotomic Cyclotomic::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Cyclotomic result = from_int(1, conductor_);
  Cyclotomic base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (std::gcd(nt::mod(k, conductor_), conductor_) != 1 && conductor_ > 1) {
    throw DomainError("Cyclotomic::galois: exponent not a unit");
  }
  Poly v(static_cast<std::size_t>(conductor_));
  for (std::size_t i = 0; i < num_.size(); ++i) {
    v[nt::mulmod(static_cast<std::int64_t>(i), k, conductor_)] += num_[i];
  }
  return from_coeffs(conductor_, std::move(v), den_);
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::times_zeta(std::int64_t order, std::int64_t k) const {
  const std::int64_t L = std::lcm(conductor_, order);
  const Cyclotomic base = embed(L);
  const std::int64_t shift = nt::mod(k * (L / order), L);
  Poly v(static_cast<std::size_t>(L));
  for (std::size_t i = 0; i < base.num_.size(); ++i) {
    v[(static_cast<std::int64_t>(i) + shift) % L] = base.num_[i];
  }
  return from_coeffs(L, std::move(v), base.den_);
}

RationalVector Cyclotomic::coordinates(std::int64_t target) const {
  const Cyclotomic e = embed(target);
  const std::size_t n = cyclotomic_polynomial(target).size() - 1;
  RationalVector out(n);
  for (std::size_t i = 0; i < e.num_.size(); ++i) {
    out[i] = Rational(e.num_[i], e.den_);
    out[i].canonicalize();
  }
  return out;
}

std::optional<RootOfUnity> Cyclotomic::as_root_of_unity() const {
  if (is_zero() || den_ != 1) return std::nullopt;
  for (const auto& c : num_) {
    if (c > 1 || c < -1) return std::nullopt;
  }
  const std::int64_t E = conductor_;
  const auto& table = zeta_powers(E);
  const Cyclotomic neg = -*this;
  const std::int64_t M = 2 * E;
  for (std::int64_t j = 0; j < E; ++j) {
    std::int64_t x = -1;
    if (table[j] == num_) x = 2 * j;
    else if (table[j] == neg.num_) x = nt::mod(2 * j + E, M);
    if (x < 0) continue;
    const std::int64_t g = std::gcd(x, M);
    return RootOfUnity{M / g, x / g};
  }
  return std::nullopt;
}

Cyclotomic Cyclotomic::minimize() const {
  if (is_rational()) {
    Cyclotomic r(1);
    r.num_ = num_;
    r.den_ = den_;
    return r;
  }
  if (auto r = as_root_of_unity()) return zeta(r->order, r->exponent);
  return *this;
}

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = num_.size(); i-- > 0;) {
    const mpz_class& c = num_[i];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << "*";
      out << "z" << conductor_;
      if (i > 1) out << "^" << i;
    }
  }
  std::string body = out.str();
  if (den_ != 1) {
    const bool single = num_.size() == 1 || std::count_if(num_.begin(), num_.end(), [](const mpz_class& c) { return c != 0; }) == 1;
    return (single ? body : "(" + body + ")") + "/" + den_.get_str();
  }
  return body;
}

CycAccumulator::CycAccumulator(std::int64_t conductor)
    : conductor_(conductor), slots_(static_cast<std::size_t>(conductor)) {}

void CycAccumulator::add_zeta(std::int64_t k, const mpz_class& coeff) {
  slots_[nt::mod(k, conductor_)] += coeff * den_;
}

void CycAccumulator::add_scaled(const Cyclotomic& value, std::int64_t shift, const mpz_class& coeff) {
  if (value.is_zero()) return;
  if (conductor_ % value.conductor() != 0) throw DomainError("CycAccumulator: conductor mismatch");
  if (value.denominator() != 1) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), value.denominator().get_mpz_t());
    if (l != den_) {
      mpz_class f = l / den_;
      for (auto& s : slots_) {
        if (s != 0) s *= f;
      }
      den_ = l;
    }
  }
  const mpz_class scale = coeff * (den_ / value.denominator());
  const std::int64_t step = conductor_ / value.conductor();
  const auto& num = value.numerator();
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0) continue;
    slots_[nt::mod(static_cast<std::int64_t>(i) * step + shift, conductor_)] += num[i] * scale;
  }
}

Cyclotomic CycAccumulator::result() const {
  return Cyclotomic::from_coeffs(conductor_, slots_, den_);
}

std::vector<Cyclotomic> kth_roots(const Cyclotomic& alpha, std::int64_t k, std::int64_t E) {
  if (k < 1) throw DomainError("kth_roots: k must be positive");
  const auto root = alpha.as_root_of_unity();
  if (!root) throw DomainError("kth_roots: argument is not a root of unity");
  const std::int64_t M = k * root->order;
  const bool fits = E % M == 0 || (E % 2 == 1 && (2 * E) % M == 0);
  if (!fits) {
    const std::int64_t minimal = (M % 4 == 2) ? M / 2 : M;
    throw ConductorError("kth_roots: conductor " + std::to_string(E) + " too small", minimal);
  }
  std::vector<Cyclotomic> out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::int64_t r = 0; r < k; ++r) {
    out.push_back(Cyclotomic::zeta(M, root->exponent + r * root->order));
  }
  return out;
}

std::int64_t common_conductor(const std::vector<Cyclotomic>& values) {
  std::int64_t L = 1;
  for (const auto& v : values) L = std::lcm(L, v.conductor());
  return L;
}

}  // namespace curtis
