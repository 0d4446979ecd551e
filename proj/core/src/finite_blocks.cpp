#include <algorithm>
#include <numeric>

#include "curtis/errors.hpp"
#include "curtis/finite.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

namespace {

std::int64_t ell_part(std::int64_t m, std::int64_t ell) { return m / nt::prime_free_part(m, ell); }

// Eigenvalues of a class over F_q, as fractions.
std::vector<std::pair<std::int64_t, std::int64_t>> eigenvalues(std::int64_t q, const SSClass& s) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& o : s.orbits) {
    std::int64_t x = o.num;
    for (int k = 0; k < o.size; ++k) {
      out.emplace_back(x, o.den);
      x = nt::mulmod(x, q, o.den);
    }
  }
  return out;
}

}  // namespace

bool is_ell_power_class(const SSClass& s, std::int64_t ell) {
  return std::all_of(s.orbits.begin(), s.orbits.end(),
                     [&](const FqOrbit& o) { return nt::prime_free_part(o.den, ell) == 1; });
}

SSClass ell_prime_part(std::int64_t q, const SSClass& s, std::int64_t ell) {
  std::vector<std::pair<std::int64_t, std::int64_t>> eig;
  for (const auto& [num, den] : eigenvalues(q, s)) {
    const std::int64_t dl = ell_part(den, ell);
    const std::int64_t dp = den / dl;
    eig.emplace_back(dp == 1 ? 0 : nt::mulmod(num, nt::inverse_mod(dl, dp), dp), dp);
  }
  return ss_class_from_eigenvalues(q, eig);
}

std::vector<SSClass> ell_regular_classes(std::int64_t q, int n, std::int64_t ell) {
  std::vector<SSClass> out;
  for (auto& s : enumerate_ss_classes(q, n)) {
    if (s.is_ell_regular(ell)) out.push_back(std::move(s));
  }
  return out;
}

FiniteCoherentTuple idempotent_tuple(std::int64_t q, int n, std::int64_t ell, const SSClass& s) {
  if (!nt::is_prime(ell) || q % ell == 0) throw DomainError("idempotent_tuple: ell must be a prime not dividing q");
  if (s.n() != n) throw DomainError("idempotent_tuple: class has the wrong size");
  if (!s.is_ell_regular(ell)) throw DomainError("idempotent_tuple: class " + s.to_string() + " is not ell-regular");
  FiniteCoherentTuple out(q, n);
  for (auto& [nu, x] : out.mutable_components()) {
    const auto& orders = x.orders();
    const std::size_t r = orders.size();
    // ell'-subgroup: multiples of the ell-part; the ell'-characters are the same multiples.
    std::vector<std::int64_t> step(r), count(r);
    std::int64_t N = 1, K = 1;
    for (std::size_t i = 0; i < r; ++i) {
      step[i] = ell_part(orders[i], ell);
      count[i] = orders[i] / step[i];
      N *= count[i];
      K = std::lcm(K, count[i]);
    }
    std::vector<std::vector<std::int64_t>> chars;
    std::vector<std::int64_t> cur(r, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == r) {
        if (ss_class_of(q, dual_character(q, nu, cur)) == s) chars.push_back(cur);
        return;
      }
      for (std::int64_t k = 0; k < count[i]; ++k) {
        cur[i] = k * step[i];
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    if (chars.empty()) continue;
    const Cyclotomic scale = Cyclotomic::from_rational(Rational(1, N));
    std::vector<std::int64_t> g(r, 0);
    auto rec_g = [&](auto&& self, std::size_t i) -> void {
      if (i == r) {
        CycAccumulator acc(K);
        for (const auto& t : chars) {
          std::int64_t e = 0;
          for (std::size_t k = 0; k < r; ++k) {
            // g t / (q^d - 1) = ab step / count.
            const std::int64_t ab = nt::mulmod(g[k] / step[k], t[k] / step[k], count[k]);
            e += nt::mulmod(nt::mulmod(ab, step[k], count[k]), K / count[k], K);
          }
          acc.add_zeta(nt::mod(-e, K));
        }
        x.add_term(g, acc.result() * scale);
        return;
      }
      for (std::int64_t k = 0; k < count[i]; ++k) {
        g[i] = k * step[i];
        self(self, i + 1);
      }
    };
    rec_g(rec_g, 0);
  }
  return out;
}

FiniteCoherentTuple interpolate(std::int64_t q, int n, const std::map<SSClass, Cyclotomic>& values) {
  FiniteCoherentTuple out(q, n);
  std::int64_t Kv = 1;
  for (const auto& [s, v] : values) Kv = std::lcm(Kv, v.conductor());
  for (auto& [nu, x] : out.mutable_components()) {
    const auto& orders = x.orders();
    const std::size_t r = orders.size();
    std::int64_t N = 1, K = Kv;
    for (auto o : orders) {
      N *= o;
      K = std::lcm(K, o);
    }
    std::vector<std::pair<std::vector<std::int64_t>, const Cyclotomic*>> chars;
    for (const auto& chi : all_dual_characters(q, nu)) {
      auto it = values.find(ss_class_of(q, chi));
      if (it != values.end() && !it->second.is_zero()) chars.emplace_back(chi.t, &it->second);
    }
    if (chars.empty()) continue;
    const Cyclotomic scale = Cyclotomic::from_rational(Rational(1, N));
    std::vector<std::int64_t> g(r, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == r) {
        CycAccumulator acc(K);
        for (const auto& [t, v] : chars) {
          std::int64_t e = 0;
          for (std::size_t k = 0; k < r; ++k) {
            e += nt::mulmod(nt::mulmod(g[k], t[k], orders[k]), K / orders[k], K);
          }
          acc.add_scaled(*v, nt::mod(-e, K));
        }
        x.add_term(g, acc.result() * scale);
        return;
      }
      for (std::int64_t k = 0; k < orders[i]; ++k) {
        g[i] = k;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

ThetaTwist::ThetaTwist(std::int64_t q, int n, std::int64_t ell, SSClass s)
    : q_(q), n_(n), ell_(ell), s_(std::move(s)) {
  if (s_.orbits.empty() || s_.n() != n) throw DomainError("ThetaTwist: class has the wrong size");
  if (!s_.is_ell_regular(ell)) throw DomainError("ThetaTwist: class is not ell-regular");
  orbit_ = s_.orbits.front();
  for (const auto& o : s_.orbits) {
    if (!(o == orbit_)) throw DomainError("ThetaTwist: class " + s_.to_string() + " is not a power of one orbit");
  }
  d_ = orbit_.size;
  target_q_ = nt::ipow(q, d_);
}

SSClass ThetaTwist::transport(const SSClass& u) const {
  std::vector<std::pair<std::int64_t, std::int64_t>> eig;
  for (const auto& [num, den] : eigenvalues(target_q_, u)) {
    const std::int64_t D = den * orbit_.den / std::gcd(den, orbit_.den);
    std::int64_t x = nt::mod(num * (D / den) + orbit_.num * (D / orbit_.den), D);
    for (int r = 0; r < d_; ++r) {
      eig.emplace_back(x, D);
      x = nt::mulmod(x, q_, D);
    }
  }
  return ss_class_from_eigenvalues(q_, eig);
}

FiniteCoherentTuple ThetaTwist::forward(const FiniteCoherentTuple& x) const {
  if (x.q() != q_ || x.n() != n_) throw DomainError("ThetaTwist::forward: wrong source algebra");
  std::map<SSClass, Cyclotomic> values;
  for (const auto& u : enumerate_ss_classes(target_q_, n_ / d_)) {
    if (!is_ell_power_class(u, ell_)) continue;
    values.emplace(u, x.value_at(transport(u)));
  }
  return interpolate(target_q_, n_ / d_, values);
}

FiniteCoherentTuple ThetaTwist::backward(const FiniteCoherentTuple& y) const {
  if (y.q() != target_q_ || y.n() != n_ / d_) throw DomainError("ThetaTwist::backward: wrong source algebra");
  std::map<SSClass, Cyclotomic> values;
  for (const auto& u : enumerate_ss_classes(target_q_, n_ / d_)) {
    if (!is_ell_power_class(u, ell_)) continue;
    values.emplace(transport(u), y.value_at(u));
  }
  return interpolate(q_, n_, values);
}

CoherentTuple embed_into_A(const FiniteCoherentTuple& x, std::shared_ptr<const TameParams> p,
                           const ModeConfig& mode) {
  if (p->q() != x.q()) throw DomainError("embed_into_A: q mismatch");
  if (p->n_max() < x.n()) throw DomainError("embed_into_A: parameters do not cover n");
  const std::int64_t ell = p->ell();
  for (const auto& s : enumerate_ss_classes(x.q(), x.n())) {
    if (!is_ell_power_class(s, ell) && !x.value_at(s).is_zero()) {
      throw DomainError("embed_into_A: input is not in the unipotent block (nonzero at " + s.to_string() + ")");
    }
  }
  CoherentTuple out = CoherentTuple::zero(p, x.n(), mode);
  for (const auto& nu : relevant_partitions(*p, x.n())) {
    const FiniteTorusAlgElem& src = x.at(nu);
    TorusRingElem& dst = out.at(nu);
    const Torus& torus = dst.torus();
    for (const auto& [g, c] : src.terms()) {
      Monomial m{std::vector<int>(nu.size(), 0), std::vector<std::int64_t>(nu.size(), 0)};
      for (std::size_t i = 0; i < nu.size(); ++i) m.texp[i] = nt::mod(g[i], torus.torsion_order(static_cast<int>(i)));
      dst.add_term(std::move(m), c);
    }
  }
  return out;
}

}  // namespace curtis
