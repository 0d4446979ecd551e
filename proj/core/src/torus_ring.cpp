#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/torus.hpp"

namespace curtis {

std::string partition_string(const Partition& nu) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i) out << ",";
    out << nu[i];
  }
  out << ")";
  return out.str();
}

int partition_size(const Partition& nu) { return std::accumulate(nu.begin(), nu.end(), 0); }

Torus::Torus(const TameParams& params, Partition parts)
    : Torus(std::make_shared<const TameParams>(params), std::move(parts)) {}

Torus::Torus(std::shared_ptr<const TameParams> params, Partition parts)
    : params_(std::move(params)), parts_(std::move(parts)) {
  for (int d : parts_) {
    if (d < 1) throw DomainError("Torus: parts must be positive");
    torsion_.push_back(params_->torsion_order(d));
    n_ += d;
  }
}

TorusRingElem TorusRingElem::constant(const Torus& torus, const Cyclotomic& c) {
  TorusRingElem x(torus);
  x.add_term(x.unit_monomial(), c);
  return x;
}

TorusRingElem TorusRingElem::monomial(const Torus& torus, Monomial m, const Cyclotomic& c) {
  TorusRingElem x(torus);
  x.add_term(std::move(m), c);
  return x;
}

TorusRingElem TorusRingElem::Q(const Torus& torus, int i, int k) {
  TorusRingElem x(torus);
  Monomial m = x.unit_monomial();
  m.qexp.at(i) = k;
  x.add_term(std::move(m), Cyclotomic::from_int(1));
  return x;
}

TorusRingElem TorusRingElem::zeta(const Torus& torus, int i, std::int64_t k) {
  TorusRingElem x(torus);
  Monomial m = x.unit_monomial();
  m.texp.at(i) = k;
  x.add_term(std::move(m), Cyclotomic::from_int(1));
  return x;
}

Monomial TorusRingElem::unit_monomial() const {
  return Monomial{std::vector<int>(torus_.rank(), 0), std::vector<std::int64_t>(torus_.rank(), 0)};
}

void TorusRingElem::add_term(Monomial m, const Cyclotomic& c) {
  if (static_cast<int>(m.qexp.size()) != torus_.rank() || static_cast<int>(m.texp.size()) != torus_.rank()) {
    throw DomainError("TorusRingElem: monomial has wrong rank");
  }
  for (int i = 0; i < torus_.rank(); ++i) m.texp[i] = nt::mod(m.texp[i], torus_.torsion_order(i));
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Cyclotomic TorusRingElem::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Cyclotomic(1) : it->second;
}

void TorusRingElem::check_same(const TorusRingElem& o) const {
  if (!(torus_ == o.torus_)) throw DomainError("TorusRingElem: torus mismatch");
}

TorusRingElem& TorusRingElem::operator+=(const TorusRingElem& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TorusRingElem& TorusRingElem::operator-=(const TorusRingElem& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

TorusRingElem TorusRingElem::operator-() const {
  TorusRingElem r(torus_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

TorusRingElem TorusRingElem::scaled(const Cyclotomic& c) const {
  TorusRingElem r(torus_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

TorusRingElem operator*(const TorusRingElem& a, const TorusRingElem& b) {
  a.check_same(b);
  TorusRingElem r(a.torus_);
  const int rank = a.torus_.rank();
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (int i = 0; i < rank; ++i) {
        m.qexp[i] += mb.qexp[i];
        m.texp[i] += mb.texp[i];
      }
      r.add_term(std::move(m), ca * cb);
    }
  }
  return r;
}

bool operator==(const TorusRingElem& a, const TorusRingElem& b) {
  if (!(a.torus_ == b.torus_) || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
  }
  return true;
}

TorusRingElem TorusRingElem::monomial_inverse() const {
  if (terms_.size() != 1) throw DomainError("monomial_inverse: element is not a monomial");
  const auto& [m, c] = *terms_.begin();
  Monomial inv = m;
  for (int i = 0; i < torus_.rank(); ++i) {
    inv.qexp[i] = -inv.qexp[i];
    inv.texp[i] = -inv.texp[i];
  }
  return monomial(torus_, std::move(inv), c.inverse());
}

TorusRingElem TorusRingElem::pow(int k) const {
  if (k < 0) return monomial_inverse().pow(-k);
  TorusRingElem r = constant(torus_, Cyclotomic::from_int(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string TorusRingElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    for (int i = 0; i < torus_.rank(); ++i) {
      if (m.qexp[i] != 0) out << "*Q" << (i + 1) << "^" << m.qexp[i];
      if (m.texp[i] != 0) out << "*z" << (i + 1) << "^" << m.texp[i];
    }
  }
  return out.str();
}

bool is_valid_character(const Torus& torus, const Character& theta) {
  if (static_cast<int>(theta.C.size()) != torus.rank() || static_cast<int>(theta.alpha.size()) != torus.rank()) {
    return false;
  }
  const TameParams& p = torus.params();
  for (int i = 0; i < torus.rank(); ++i) {
    if (theta.alpha[i].is_zero()) return false;
    if (nt::mod(theta.C[i], p.L()) % p.scale(torus.part(i)) != 0) return false;
  }
  return true;
}

Cyclotomic evaluate(const TorusRingElem& x, const Character& theta) {
  const Torus& torus = x.torus();
  if (!is_valid_character(torus, theta)) throw DomainError("evaluate: character does not match the torus");
  if (x.is_zero()) return Cyclotomic(1);
  const std::int64_t L = torus.params().L();
  const int rank = torus.rank();

  std::vector<std::optional<RootOfUnity>> roots(rank);
  bool all_roots = true;
  std::int64_t K = L;
  for (int i = 0; i < rank; ++i) {
    roots[i] = theta.alpha[i].as_root_of_unity();
    if (roots[i]) K = std::lcm(K, roots[i]->order);
    else all_roots = false;
  }
  if (all_roots) {
    for (const auto& [m, c] : x.terms()) K = std::lcm(K, c.conductor());
    CycAccumulator acc(K);
    for (const auto& [m, c] : x.terms()) {
      std::int64_t shift = 0;
      for (int i = 0; i < rank; ++i) {
        shift += nt::mulmod(nt::mulmod(theta.C[i], m.texp[i], L), K / L, K);
        shift += nt::mulmod(nt::mulmod(roots[i]->exponent, m.qexp[i], roots[i]->order), K / roots[i]->order, K);
      }
      acc.add_scaled(c, nt::mod(shift, K));
    }
    return acc.result();
  }
  Cyclotomic total(1);
  for (const auto& [m, c] : x.terms()) {
    Cyclotomic term = c;
    std::int64_t tshift = 0;
    for (int i = 0; i < rank; ++i) {
      if (m.qexp[i] != 0) term *= theta.alpha[i].pow(m.qexp[i]);
      tshift += nt::mulmod(theta.C[i], m.texp[i], L);
    }
    total += term.times_zeta(L, nt::mod(tshift, L));
  }
  return total;
}

std::vector<Symmetry> symmetry_generators(const Torus& torus) {
  std::vector<Symmetry> out;
  const auto q = torus.params().q();
  for (int i = 0; i < torus.rank(); ++i) {
    const std::int64_t t = torus.torsion_order(i);
    if (t > 1 && nt::mod(q, t) != 1) out.push_back(Symmetry{Symmetry::Kind::twist, i, i});
  }
  for (int i = 0; i < torus.rank(); ++i) {
    for (int j = i + 1; j < torus.rank(); ++j) {
      if (torus.part(i) == torus.part(j)) out.push_back(Symmetry{Symmetry::Kind::swap, i, j});
    }
  }
  return out;
}

namespace {

Monomial act(const Torus& torus, Monomial m, const Symmetry& g) {
  if (g.kind == Symmetry::Kind::swap) {
    if (torus.part(g.i) != torus.part(g.j)) throw DomainError("apply_symmetry: swap of unequal degrees");
    std::swap(m.qexp[g.i], m.qexp[g.j]);
    std::swap(m.texp[g.i], m.texp[g.j]);
  } else {
    m.texp[g.i] = nt::mulmod(m.texp[g.i], torus.params().q(), torus.torsion_order(g.i));
  }
  return m;
}

}  // namespace

TorusRingElem apply_symmetry(const TorusRingElem& x, const Symmetry& g) {
  TorusRingElem r(x.torus());
  for (const auto& [m, c] : x.terms()) r.add_term(act(x.torus(), m, g), c);
  return r;
}

Character transport_character(const Torus& torus, const Character& theta, const Symmetry& g) {
  Character out = theta;
  if (g.kind == Symmetry::Kind::swap) {
    std::swap(out.C[g.i], out.C[g.j]);
    std::swap(out.alpha[g.i], out.alpha[g.j]);
  } else {
    const std::int64_t L = torus.params().L();
    out.C[g.i] = nt::mulmod(theta.C[g.i], nt::inverse_mod(torus.params().q(), L), L);
  }
  return out;
}

std::optional<Symmetry> first_moving_symmetry(const TorusRingElem& x) {
  for (const auto& g : symmetry_generators(x.torus())) {
    if (apply_symmetry(x, g) != x) return g;
  }
  return std::nullopt;
}

bool is_invariant(const TorusRingElem& x) { return !first_moving_symmetry(x).has_value(); }

TorusRingElem symmetrize(const TorusRingElem& x) {
  const auto gens = symmetry_generators(x.torus());
  TorusRingElem r(x.torus());
  for (const auto& [m, c] : x.terms()) {
    std::set<Monomial> orbit{m};
    std::deque<Monomial> todo{m};
    while (!todo.empty()) {
      Monomial cur = todo.front();
      todo.pop_front();
      for (const auto& g : gens) {
        Monomial nxt = act(x.torus(), cur, g);
        if (orbit.insert(nxt).second) todo.push_back(std::move(nxt));
      }
    }
    const Cyclotomic share = c / Cyclotomic::from_int(static_cast<long>(orbit.size()));
    for (const auto& o : orbit) r.add_term(o, share);
  }
  return r;
}

TorusRingElem trace_element(const Torus& torus, std::int64_t e, std::int64_t f, const ModeConfig& mode) {
  TorusRingElem x(torus);
  const auto q = torus.params().q();
  for (int i = 0; i < torus.rank(); ++i) {
    const int d = torus.part(i);
    if (f % d != 0) continue;
    const std::int64_t k = f / d;
    const Cyclotomic sign = Cyclotomic::from_int((k % 2 != 0 && mode.sign(d) == -1) ? -1 : 1);
    const std::int64_t t = torus.torsion_order(i);
    for (int j = 0; j < d; ++j) {
      Monomial m = x.unit_monomial();
      m.qexp[i] = static_cast<int>(k);
      m.texp[i] = nt::mulmod(nt::mod(e, t), nt::powmod(q, j, t), t);
      x.add_term(std::move(m), sign);
    }
  }
  return x;
}

bool compact_support(const TorusRingElem& x) {
  for (const auto& [m, c] : x.terms()) {
    for (int v : m.qexp) {
      if (v != 0) return false;
    }
  }
  return true;
}

int weighted_degree(const Torus& torus, const Monomial& m) {
  int deg = 0;
  for (int i = 0; i < torus.rank(); ++i) deg += m.qexp[i] * torus.part(i);
  return deg;
}

TorusRingElem reduce_torsion(const TorusRingElem& x, int factor, std::int64_t modulus) {
  TorusRingElem r(x.torus());
  for (const auto& [m, c] : x.terms()) {
    Monomial red = m;
    red.texp[factor] = nt::mod(red.texp[factor], modulus);
    r.add_term(std::move(red), c);
  }
  return r;
}

}  // namespace curtis
