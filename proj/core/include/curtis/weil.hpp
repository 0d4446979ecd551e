#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curtis/tame.hpp"
#include "curtis/torus.hpp"

namespace curtis {

/// Decomposition of Ind from W_{F_d} of the character (C, alpha), twisted by s(d).
/// The d/m Frobenius values are the (d/m)-th roots of s(d) * alpha; when conductor
/// is given they must lie in Q(zeta_conductor).
std::vector<IrrRep> induce_factor(const TameParams& p, int d, std::int64_t C, const Cyclotomic& alpha,
                                  const ModeConfig& mode, std::optional<std::int64_t> conductor = std::nullopt);

SSRep rho_of(const Torus& torus, const Character& theta, const ModeConfig& mode);

bool equivalent(const Torus& t1, const Character& th1, const Torus& t2, const Character& th2,
                const ModeConfig& mode);

/// Trace of sigma^e Fr^f acting on rho.
Cyclotomic trace_at(const TameParams& p, const SSRep& rho, std::int64_t e, std::int64_t f);

/// Brute-force decomposition of the induced character inside the finite metacyclic
/// quotient <s, f | s^{ell^A}, f s f^{-1} = s^q, f^D>. Returns pieces with multiplicity.
std::vector<IrrRep> metacyclic_oracle(const TameParams& p, int d, std::int64_t C, const Cyclotomic& alpha,
                                      const ModeConfig& mode);

/// All semisimple representations of dimension n with Frobenius values in mu_N.
std::vector<SSRep> enumerate_ssreps(const TameParams& p, int n, std::int64_t N,
                                    std::size_t guard = 1000000);

/// Orbit representatives modulo ell^A with orbit size at most max_size.
std::vector<InertiaOrbit> inertia_orbits(const TameParams& p, int max_size);

}  // namespace curtis
