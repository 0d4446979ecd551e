#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curtis/cyclotomic.hpp"

namespace curtis {

enum class Mode { rectified, plain };

/// Normalization of the induced representations attached to torus characters.
///
/// Rectified mode twists a degree-d factor by the unramified sign (-1)^{d-1};
/// plain mode is literal induction.
struct ModeConfig {
  Mode mode = Mode::rectified;

  int sign(int d) const { return (mode == Mode::rectified && d % 2 == 0) ? -1 : 1; }
  std::string name() const { return mode == Mode::rectified ? "rectified" : "plain"; }
  static ModeConfig parse(const std::string& s);
};

/// ell, q and the valuation data a(d) = v_ell(q^d - 1).
///
/// Inertia characters of every degree up to n_max are exponents C modulo
/// L = ell^A, A = max a(d); a degree-d character has ell^{A - a(d)} | C.
class TameParams {
 public:
  TameParams(std::int64_t ell, std::int64_t q, int n_max);

  std::int64_t ell() const { return ell_; }
  std::int64_t q() const { return q_; }
  int n_max() const { return n_max_; }
  std::int64_t e_q() const { return e_q_; }
  int A() const { return A_; }
  /// ell^A.
  std::int64_t L() const { return L_; }

  int a(int d) const;
  /// ell^{a(d)}: order of the ell-torsion of a degree-d factor.
  std::int64_t torsion_order(int d) const;
  /// ell^{A - a(d)}: scale from local degree-d exponents to the global system.
  std::int64_t scale(int d) const { return L_ / torsion_order(d); }
  bool is_relevant_degree(std::int64_t d) const;
  std::vector<int> relevant_degrees() const;
  /// Largest relevant divisor of d.
  int largest_relevant_divisor(int d) const;

  friend bool operator==(const TameParams& a, const TameParams& b) {
    return a.ell_ == b.ell_ && a.q_ == b.q_ && a.n_max_ == b.n_max_;
  }

 private:
  std::int64_t ell_;
  std::int64_t q_;
  int n_max_;
  std::int64_t e_q_;
  int A_;
  std::int64_t L_;
  std::vector<int> a_table_;
};

/// Orbit of an inertia exponent under multiplication by q modulo ell^A.
struct InertiaOrbit {
  std::int64_t rep = 0;
  int size = 1;

  friend bool operator==(const InertiaOrbit&, const InertiaOrbit&) = default;
  friend auto operator<=>(const InertiaOrbit&, const InertiaOrbit&) = default;
};

InertiaOrbit orbit_of(const TameParams& p, std::int64_t C);
/// All elements of the orbit in the order C, qC, q^2C, ...
std::vector<std::int64_t> orbit_elements(const TameParams& p, std::int64_t C);

/// Irreducible ell-ramified representation: induced from W_{F_m} with inertia
/// orbit of size m and Frobenius^m value phi.
struct IrrRep {
  InertiaOrbit orbit;
  Cyclotomic phi;

  int dim() const { return orbit.size; }
  friend bool operator==(const IrrRep& a, const IrrRep& b) {
    return a.orbit == b.orbit && a.phi == b.phi;
  }
};

/// Semisimple representation as a multiset of irreducibles.
class SSRep {
 public:
  SSRep() = default;
  explicit SSRep(std::vector<IrrRep> pieces);

  const std::vector<IrrRep>& pieces() const { return pieces_; }
  int dim() const { return dim_; }
  void add(const IrrRep& r);
  SSRep direct_sum(const SSRep& other) const;

  /// String key that is equal for equal multisets. All phi must lie in Q(zeta_K).
  std::string canonical_key(std::int64_t K) const;
  std::string to_string() const;

  friend bool operator==(const SSRep& a, const SSRep& b);

 private:
  void sort_pieces();

  std::vector<IrrRep> pieces_;
  int dim_ = 0;
};

}  // namespace curtis
