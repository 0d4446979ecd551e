#include <algorithm>
#include <numeric>
#include <sstream>

#include "curtis/ell_local.hpp"
#include "curtis/errors.hpp"
#include "curtis/finite.hpp"
#include "curtis/linalg.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

namespace {

constexpr std::int64_t kFiniteGuard = 1000000;

void check_q(std::int64_t q) {
  if (nt::prime_power_base(q) == 0) throw DomainError("q must be a prime power");
}

void guard_size(std::int64_t q, int n) {
  double size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<double>(q);
  if (size > static_cast<double>(kFiniteGuard)) throw GuardError("q^n exceeds 10^6");
}

std::int64_t lcm_all(const std::vector<std::int64_t>& v) {
  std::int64_t K = 1;
  for (auto x : v) K = std::lcm(K, x);
  return K;
}

}  // namespace

FqOrbit orbit_of_fraction(std::int64_t q, std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("orbit_of_fraction: denominator must be positive");
  num = nt::mod(num, den);
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (num == 0) return FqOrbit{0, 1, 1};
  if (std::gcd(den, q) != 1) throw DomainError("orbit_of_fraction: torsion point of order divisible by p");
  FqOrbit o{num, den, 1};
  std::int64_t x = nt::mulmod(num, q, den);
  while (x != num) {
    o.num = std::min(o.num, x);
    ++o.size;
    x = nt::mulmod(x, q, den);
  }
  return o;
}

int SSClass::n() const {
  int s = 0;
  for (const auto& o : orbits) s += o.size;
  return s;
}

bool SSClass::is_ell_regular(std::int64_t ell) const {
  return std::all_of(orbits.begin(), orbits.end(), [&](const FqOrbit& o) { return o.den % ell != 0; });
}

std::string SSClass::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (i) out << ", ";
    out << orbits[i].num << "/" << orbits[i].den;
    if (orbits[i].size > 1) out << "[" << orbits[i].size << "]";
  }
  out << "}";
  return out.str();
}

SSClass ss_class_from_eigenvalues(std::int64_t q, const std::vector<std::pair<std::int64_t, std::int64_t>>& eig) {
  std::map<FqOrbit, int> counts;
  for (const auto& [num, den] : eig) ++counts[orbit_of_fraction(q, num, den)];
  SSClass s;
  for (const auto& [o, c] : counts) {
    if (c % o.size != 0) throw DomainError("eigenvalue multiset is not Frobenius stable");
    for (int k = 0; k < c / o.size; ++k) s.orbits.push_back(o);
  }
  return s;
}

std::vector<SSClass> enumerate_ss_classes(std::int64_t q, int n) {
  check_q(q);
  guard_size(q, n);
  std::vector<FqOrbit> orbits;
  for (int d = 1; d <= n; ++d) {
    const std::int64_t M = nt::ipow(q, d) - 1;
    for (std::int64_t c = 0; c < M; ++c) {
      const FqOrbit o = orbit_of_fraction(q, c, M);
      if (o.size == d) orbits.push_back(o);
    }
  }
  std::sort(orbits.begin(), orbits.end());
  orbits.erase(std::unique(orbits.begin(), orbits.end()), orbits.end());

  std::vector<SSClass> out;
  SSClass cur;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < orbits.size(); ++i) {
      if (orbits[i].size > remaining) continue;
      cur.orbits.push_back(orbits[i]);
      self(self, i, remaining - orbits[i].size);
      cur.orbits.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

std::vector<std::int64_t> finite_factor_orders(std::int64_t q, const Partition& nu) {
  std::vector<std::int64_t> out;
  for (int d : nu) out.push_back(nt::ipow(q, d) - 1);
  return out;
}

FiniteTorusAlgElem::FiniteTorusAlgElem(std::int64_t q, Partition nu)
    : q_(q), nu_(std::move(nu)), orders_(finite_factor_orders(q_, nu_)) {}

FiniteTorusAlgElem FiniteTorusAlgElem::constant(std::int64_t q, Partition nu, const Cyclotomic& c) {
  FiniteTorusAlgElem x(q, std::move(nu));
  x.add_term(Key(x.nu_.size(), 0), c);
  return x;
}

void FiniteTorusAlgElem::add_term(Key g, const Cyclotomic& c) {
  if (g.size() != orders_.size()) throw DomainError("group element has the wrong rank");
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = nt::mod(g[i], orders_[i]);
  if (c.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(std::move(g), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FiniteTorusAlgElem& FiniteTorusAlgElem::operator+=(const FiniteTorusAlgElem& o) {
  if (o.q_ != q_ || o.nu_ != nu_) throw DomainError("finite torus mismatch");
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

FiniteTorusAlgElem FiniteTorusAlgElem::scaled(const Cyclotomic& c) const {
  FiniteTorusAlgElem out(q_, nu_);
  for (const auto& [g, v] : terms_) out.add_term(g, v * c);
  return out;
}

FiniteTorusAlgElem operator*(const FiniteTorusAlgElem& a, const FiniteTorusAlgElem& b) {
  if (a.q_ != b.q_ || a.nu_ != b.nu_) throw DomainError("finite torus mismatch");
  FiniteTorusAlgElem out(a.q_, a.nu_);
  for (const auto& [g, c] : a.terms_) {
    for (const auto& [h, d] : b.terms_) {
      FiniteTorusAlgElem::Key k(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) k[i] = g[i] + h[i];
      out.add_term(std::move(k), c * d);
    }
  }
  return out;
}

bool operator==(const FiniteTorusAlgElem& a, const FiniteTorusAlgElem& b) {
  return a.q_ == b.q_ && a.nu_ == b.nu_ && a.terms_ == b.terms_;
}

bool FiniteTorusAlgElem::is_ell_integral(std::int64_t ell) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& kv) { return curtis::is_ell_integral(kv.second, ell); });
}

DualCharacter dual_character(std::int64_t q, const Partition& nu, std::vector<std::int64_t> t) {
  if (t.size() != nu.size()) throw DomainError("dual_character: rank mismatch");
  const auto orders = finite_factor_orders(q, nu);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = nt::mod(t[i], orders[i]);
  return DualCharacter{nu, std::move(t)};
}

Cyclotomic character_value(std::int64_t q, const DualCharacter& chi, const FiniteTorusAlgElem::Key& g) {
  const auto orders = finite_factor_orders(q, chi.nu);
  const std::int64_t K = lcm_all(orders);
  std::int64_t e = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    e = nt::mod(e + nt::mulmod(nt::mulmod(g[i], chi.t[i], orders[i]), K / orders[i], K), K);
  }
  return Cyclotomic::zeta(K, e);
}

Cyclotomic evaluate(const FiniteTorusAlgElem& x, const DualCharacter& chi) {
  if (chi.nu != x.nu()) throw DomainError("evaluate: character is for another torus");
  const auto& orders = x.orders();
  std::int64_t K = lcm_all(orders);
  for (const auto& [g, c] : x.terms()) K = std::lcm(K, c.conductor());
  CycAccumulator acc(K);
  for (const auto& [g, c] : x.terms()) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      e += nt::mulmod(nt::mulmod(g[i], chi.t[i], orders[i]), K / orders[i], K);
    }
    acc.add_scaled(c, nt::mod(e, K));
  }
  return acc.result();
}

SSClass ss_class_of(std::int64_t q, const DualCharacter& chi) {
  const auto orders = finite_factor_orders(q, chi.nu);
  std::vector<std::pair<std::int64_t, std::int64_t>> eig;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    // Eigenvalues of factor i: the Frobenius conjugates of t_i / (q^{nu_i} - 1).
    std::int64_t x = chi.t[i];
    for (int k = 0; k < chi.nu[i]; ++k) {
      eig.emplace_back(x, orders[i]);
      x = nt::mulmod(x, q, orders[i]);
    }
  }
  return ss_class_from_eigenvalues(q, eig);
}

std::vector<DualCharacter> all_dual_characters(std::int64_t q, const Partition& nu) {
  const auto orders = finite_factor_orders(q, nu);
  double total = 1;
  for (auto o : orders) total *= static_cast<double>(o);
  if (total > static_cast<double>(kFiniteGuard)) throw GuardError("all_dual_characters: more than 10^6 characters");
  std::vector<DualCharacter> out;
  DualCharacter cur{nu, std::vector<std::int64_t>(nu.size(), 0)};
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == nu.size()) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t t = 0; t < orders[i]; ++t) {
      cur.t[i] = t;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

FiniteCoherentTuple::FiniteCoherentTuple(std::int64_t q, int n) : q_(q), n_(n) {
  check_q(q);
  guard_size(q, n);
  for (const auto& nu : nt::partitions(n)) components_.emplace(nu, FiniteTorusAlgElem(q, nu));
}

FiniteCoherentTuple FiniteCoherentTuple::constant(std::int64_t q, int n, const Cyclotomic& c) {
  FiniteCoherentTuple t(q, n);
  for (auto& [nu, x] : t.components_) x = FiniteTorusAlgElem::constant(q, nu, c);
  return t;
}

const FiniteTorusAlgElem& FiniteCoherentTuple::at(const Partition& nu) const {
  auto it = components_.find(nu);
  if (it == components_.end()) throw DomainError("no component for partition " + partition_string(nu));
  return it->second;
}

FiniteTorusAlgElem& FiniteCoherentTuple::at(const Partition& nu) {
  auto it = components_.find(nu);
  if (it == components_.end()) throw DomainError("no component for partition " + partition_string(nu));
  return it->second;
}

bool FiniteCoherentTuple::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

FiniteCoherentTuple& FiniteCoherentTuple::operator+=(const FiniteCoherentTuple& o) {
  if (o.q_ != q_ || o.n_ != n_) throw DomainError("finite tuple mismatch");
  for (auto& [nu, x] : components_) x += o.at(nu);
  return *this;
}

FiniteCoherentTuple FiniteCoherentTuple::scaled(const Cyclotomic& c) const {
  FiniteCoherentTuple out = *this;
  for (auto& [nu, x] : out.components_) x = x.scaled(c);
  return out;
}

FiniteCoherentTuple operator*(const FiniteCoherentTuple& a, const FiniteCoherentTuple& b) {
  if (a.q_ != b.q_ || a.n_ != b.n_) throw DomainError("finite tuple mismatch");
  FiniteCoherentTuple out(a.q_, a.n_);
  for (auto& [nu, x] : out.components_) x = a.at(nu) * b.at(nu);
  return out;
}

bool operator==(const FiniteCoherentTuple& a, const FiniteCoherentTuple& b) {
  return a.q_ == b.q_ && a.n_ == b.n_ && a.components_ == b.components_;
}

Cyclotomic FiniteCoherentTuple::value_at(const SSClass& s) const {
  Partition nu;
  std::vector<std::int64_t> t;
  std::vector<FqOrbit> orbits = s.orbits;
  std::stable_sort(orbits.begin(), orbits.end(), [](const FqOrbit& a, const FqOrbit& b) { return a.size > b.size; });
  for (const auto& o : orbits) {
    nu.push_back(o.size);
    t.push_back(o.num * ((nt::ipow(q_, o.size) - 1) / o.den));
  }
  return evaluate(at(nu), dual_character(q_, nu, t));
}

FiniteCoherence is_coherent_finite(const FiniteCoherentTuple& t) {
  FiniteCoherence out;
  std::map<SSClass, std::pair<Cyclotomic, std::string>> seen;
  for (const auto& [nu, x] : t.components()) {
    for (const auto& chi : all_dual_characters(t.q(), nu)) {
      const SSClass s = ss_class_of(t.q(), chi);
      Cyclotomic v = evaluate(x, chi);
      std::ostringstream where;
      where << partition_string(nu) << " t=(";
      for (std::size_t i = 0; i < chi.t.size(); ++i) where << (i ? "," : "") << chi.t[i];
      where << ")";
      auto it = seen.find(s);
      if (it == seen.end()) {
        seen.emplace(s, std::make_pair(std::move(v), where.str()));
      } else if (it->second.first != v) {
        out.coherent = false;
        out.witness = "class " + s.to_string() + ": " + it->second.second + " -> " + it->second.first.to_string() +
                      " vs " + where.str() + " -> " + v.to_string();
        return out;
      }
    }
  }
  return out;
}

FiniteBasis coherent_basis(std::int64_t q, int n) {
  FiniteBasis out;
  out.class_count = enumerate_ss_classes(q, n).size();
  const FiniteCoherentTuple zero(q, n);

  struct Var {
    Partition nu;
    FiniteTorusAlgElem::Key g;
  };
  std::vector<Var> vars;
  std::map<Partition, std::size_t, std::greater<Partition>> offset;
  std::int64_t K = 1;
  for (const auto& [nu, x] : zero.components()) {
    offset[nu] = vars.size();
    const auto& orders = x.orders();
    K = std::lcm(K, lcm_all(orders));
    FiniteTorusAlgElem::Key g(nu.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == nu.size()) {
        vars.push_back(Var{nu, g});
        return;
      }
      for (std::int64_t v = 0; v < orders[i]; ++v) {
        g[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  if (vars.size() > 20000) throw GuardError("coherent_basis: more than 20000 unknowns");

  std::vector<RationalVector> zeta_coords(K);
  for (std::int64_t e = 0; e < K; ++e) zeta_coords[e] = Cyclotomic::zeta(K, e).coordinates(K);
  const std::size_t width = zeta_coords[0].size();

  auto exponent = [&](const Var& v, const DualCharacter& chi) {
    const auto orders = finite_factor_orders(q, chi.nu);
    std::int64_t e = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      e += nt::mulmod(nt::mulmod(v.g[i], chi.t[i], orders[i]), K / orders[i], K);
    }
    return nt::mod(e, K);
  };

  std::map<SSClass, DualCharacter> first;
  RowEchelon ech(vars.size());
  for (const auto& [nu, x] : zero.components()) {
    for (const auto& chi : all_dual_characters(q, nu)) {
      const SSClass s = ss_class_of(q, chi);
      auto it = first.find(s);
      if (it == first.end()) {
        first.emplace(s, chi);
        continue;
      }
      std::vector<SparseRow> rows(width);
      auto add = [&](const DualCharacter& c, int sign) {
        const std::size_t base = offset[c.nu];
        for (std::size_t v = base; v < vars.size() && vars[v].nu == c.nu; ++v) {
          const auto& coords = zeta_coords[exponent(vars[v], c)];
          for (std::size_t k = 0; k < width; ++k) {
            if (coords[k] == 0) continue;
            Rational& slot = rows[k][v];
            slot += sign > 0 ? coords[k] : Rational(-coords[k]);
          }
        }
      };
      add(chi, 1);
      add(it->second, -1);
      for (auto& row : rows) {
        for (auto r = row.begin(); r != row.end();) {
          if (r->second == 0) r = row.erase(r); else ++r;
        }
        if (!row.empty()) ech.add_row(std::move(row));
      }
    }
  }

  for (const auto& vec : ech.nullspace()) {
    FiniteCoherentTuple t = zero;
    mpz_class common = 1;
    for (const auto& c : vec) {
      if (c != 0) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vec[v] != 0) t.at(vars[v].nu).add_term(vars[v].g, Cyclotomic::from_rational(vec[v] * common));
    }
    out.basis.push_back(std::move(t));
  }
  return out;
}

}  // namespace curtis
