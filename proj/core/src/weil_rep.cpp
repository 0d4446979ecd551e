#include <numeric>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"

namespace curtis {

std::vector<IrrRep> induce_factor(const TameParams& p, int d, std::int64_t C, const Cyclotomic& alpha,
                                  const ModeConfig& mode, std::optional<std::int64_t> conductor) {
  if (alpha.is_zero()) throw DomainError("induce_factor: alpha must be nonzero");
  const InertiaOrbit orbit = orbit_of(p, C);
  if (d % orbit.size != 0) {
    throw DomainError("induce_factor: inertia exponent is not a degree-" + std::to_string(d) + " character");
  }
  const int j = d / orbit.size;
  const Cyclotomic target = alpha * Cyclotomic::from_int(mode.sign(d));
  if (j == 1) return {IrrRep{orbit, target}};
  std::int64_t E = 0;
  if (conductor) {
    E = *conductor;
  } else {
    const auto root = target.as_root_of_unity();
    if (!root) throw DomainError("induce_factor: alpha must be a root of unity when d/m > 1");
    E = j * root->order;
  }
  std::vector<IrrRep> out;
  for (auto& beta : kth_roots(target, j, E)) out.push_back(IrrRep{orbit, std::move(beta)});
  return out;
}

SSRep rho_of(const Torus& torus, const Character& theta, const ModeConfig& mode) {
  if (!is_valid_character(torus, theta)) throw DomainError("rho_of: character does not match the torus");
  std::vector<IrrRep> pieces;
  for (int i = 0; i < torus.rank(); ++i) {
    auto part = induce_factor(torus.params(), torus.part(i), theta.C[i], theta.alpha[i], mode);
    pieces.insert(pieces.end(), part.begin(), part.end());
  }
  return SSRep(std::move(pieces));
}

bool equivalent(const Torus& t1, const Character& th1, const Torus& t2, const Character& th2,
                const ModeConfig& mode) {
  if (t1.n() != t2.n()) return false;
  return rho_of(t1, th1, mode) == rho_of(t2, th2, mode);
}

Cyclotomic trace_at(const TameParams& p, const SSRep& rho, std::int64_t e, std::int64_t f) {
  const std::int64_t L = p.L();
  Cyclotomic total(1);
  for (const auto& piece : rho.pieces()) {
    const int m = piece.orbit.size;
    if (f % m != 0) continue;
    const Cyclotomic value = piece.phi.pow(f / m);
    const std::int64_t K = std::lcm(L, value.conductor());
    CycAccumulator acc(K);
    for (std::int64_t c : orbit_elements(p, piece.orbit.rep)) {
      acc.add_scaled(value, nt::mulmod(c, e, L) * (K / L));
    }
    total += acc.result();
  }
  return total;
}

std::vector<InertiaOrbit> inertia_orbits(const TameParams& p, int max_size) {
  std::vector<InertiaOrbit> out;
  for (std::int64_t C = 0; C < p.L(); ++C) {
    const InertiaOrbit o = orbit_of(p, C);
    if (o.rep == C && o.size <= max_size) out.push_back(o);
  }
  return out;
}

std::vector<SSRep> enumerate_ssreps(const TameParams& p, int n, std::int64_t N, std::size_t guard) {
  if (n < 1 || N < 1) throw DomainError("enumerate_ssreps: n and N must be positive");
  std::vector<IrrRep> items;
  for (const auto& o : inertia_orbits(p, n)) {
    for (std::int64_t k = 0; k < N; ++k) items.push_back(IrrRep{o, Cyclotomic::zeta(N, k)});
  }
  // count[i][r]: multisets from items[i..] with total dimension r.
  std::vector<std::vector<double>> count(items.size() + 1, std::vector<double>(n + 1, 0.0));
  count[items.size()][0] = 1;
  for (std::size_t i = items.size(); i-- > 0;) {
    const int m = items[i].dim();
    for (int r = 0; r <= n; ++r) {
      count[i][r] = count[i + 1][r] + (r >= m ? count[i][r - m] : 0.0);
    }
  }
  if (count[0][n] > static_cast<double>(guard)) {
    throw GuardError("enumerate_ssreps: " + std::to_string(static_cast<long long>(count[0][n])) +
                     " representations exceed the guard");
  }
  std::vector<SSRep> out;
  std::vector<IrrRep> cur;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
      if (items[i].dim() > remaining) continue;
      cur.push_back(items[i]);
      self(self, i, remaining - items[i].dim());
      cur.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

}  // namespace curtis
