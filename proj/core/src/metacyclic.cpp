#include <algorithm>
#include <numeric>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/weil.hpp"

namespace curtis {

namespace {

// Finite quotient Gamma = {(e mod L, k mod D)} with (e,k)(e',k') = (e + q^k e', k + k').
struct Metacyclic {
  std::int64_t L;
  std::int64_t D;
  std::int64_t q;
  std::int64_t K;  // all character values lie in mu_K
  std::vector<std::int64_t> qpow;  // q^i mod L for i < D
};

// Induced class function from <s, f^m> of (e,k) -> zeta_L^{C e} * zeta_K^{bexp * k/m}, as lists
// of exponents modulo K (empty where the function vanishes).
struct InducedCharacter {
  int m;
  std::int64_t C;
  std::int64_t step;  // exponent increment per unit of k/m, in mu_K
};

void add_values(const Metacyclic& g, const InducedCharacter& chi, std::int64_t e, std::int64_t k,
                std::vector<std::int64_t>& out) {
  out.clear();
  if (k % chi.m != 0) return;
  const std::int64_t scale = g.K / g.L;
  const std::int64_t base = nt::mulmod(chi.step, k / chi.m, g.K);
  for (int i = 0; i < chi.m; ++i) {
    const std::int64_t ce = nt::mulmod(nt::mulmod(chi.C, g.qpow[i], g.L), e, g.L);
    out.push_back((ce * scale + base) % g.K);
  }
}

// Sum over Gamma of a(g) * conj(b(g)), reduced in Q(zeta_K); must be rational.
Rational inner_product(const Metacyclic& g, const InducedCharacter& a, const InducedCharacter& b) {
  std::vector<std::int64_t> acc(static_cast<std::size_t>(g.K), 0);
  std::vector<std::int64_t> va, vb;
  const std::int64_t kstep = std::lcm<std::int64_t>(a.m, b.m);
  for (std::int64_t k = 0; k < g.D; k += kstep) {
    for (std::int64_t e = 0; e < g.L; ++e) {
      add_values(g, a, e, k, va);
      add_values(g, b, e, k, vb);
      for (auto x : va) {
        for (auto y : vb) acc[nt::mod(x - y, g.K)] += 1;
      }
    }
  }
  std::vector<mpz_class> num(acc.begin(), acc.end());
  const Cyclotomic total = Cyclotomic::from_coeffs(g.K, std::move(num));
  if (!total.is_rational()) throw std::logic_error("metacyclic_oracle: irrational inner product");
  return total.rational_value() / Rational(g.L * g.D);
}

}  // namespace

std::vector<IrrRep> metacyclic_oracle(const TameParams& p, int d, std::int64_t C, const Cyclotomic& alpha,
                                      const ModeConfig& mode) {
  const Cyclotomic twisted = alpha * Cyclotomic::from_int(mode.sign(d));
  const auto root = twisted.as_root_of_unity();
  if (!root) throw DomainError("metacyclic_oracle: alpha must be a root of unity");
  const std::int64_t L = p.L();
  const std::int64_t C0 = nt::mod(C, L);
  if (nt::mod(C0 * (nt::powmod(p.q(), d, L) - 1), L) != 0) {
    throw DomainError("metacyclic_oracle: inertia exponent is not a degree-d character");
  }
  const std::int64_t order_q = nt::mult_order(p.q(), L);
  const std::int64_t D = std::lcm(d * root->order, order_q);
  if (L * D > 1000000) throw GuardError("metacyclic_oracle: group order exceeds 10^6");

  Metacyclic g{L, D, p.q(), std::lcm(L, D), {}};
  for (std::int64_t i = 0; i < D; ++i) g.qpow.push_back(nt::powmod(p.q(), i, L));

  // theta(f^d) = zeta_N^a = zeta_K^{a K/N}.
  const InducedCharacter chi{d, C0, nt::mod(root->exponent * (g.K / root->order), g.K)};

  std::vector<IrrRep> out;
  int total_dim = 0;
  for (std::int64_t Cp = 0; Cp < L; ++Cp) {
    const auto orbit = orbit_elements(p, Cp);
    const int m = static_cast<int>(orbit.size());
    if (*std::min_element(orbit.begin(), orbit.end()) != Cp || m > d) continue;
    const std::int64_t count = D / m;
    for (std::int64_t b = 0; b < count; ++b) {
      // beta = zeta_{D/m}^b = zeta_K^{b K m / D}.
      const InducedCharacter psi{m, Cp, nt::mod(b * (g.K / count), g.K)};
      const Rational mult = inner_product(g, chi, psi);
      if (mult == 0) continue;
      if (mult.get_den() != 1 || mult < 0) throw std::logic_error("metacyclic_oracle: non-integral multiplicity");
      if (inner_product(g, psi, psi) != 1) throw std::logic_error("metacyclic_oracle: candidate not irreducible");
      for (long r = 0; r < mult.get_num().get_si(); ++r) {
        out.push_back(IrrRep{InertiaOrbit{Cp, m}, Cyclotomic::zeta(count, b)});
        total_dim += m;
      }
    }
  }
  if (total_dim != d) throw std::logic_error("metacyclic_oracle: decomposition has wrong dimension");
  return out;
}

}  // namespace curtis
