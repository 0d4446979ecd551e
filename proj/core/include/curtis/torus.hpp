#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curtis/cyclotomic.hpp"
#include "curtis/tame.hpp"

namespace curtis {

using Partition = std::vector<int>;

std::string partition_string(const Partition& nu);
int partition_size(const Partition& nu);

/// Unramified maximal torus attached to a partition (factor i is F_{nu_i}^x).
class Torus {
 public:
  Torus(const TameParams& params, Partition parts);
  Torus(std::shared_ptr<const TameParams> params, Partition parts);

  const Partition& parts() const { return parts_; }
  int rank() const { return static_cast<int>(parts_.size()); }
  int n() const { return n_; }
  int part(int i) const { return parts_[i]; }
  /// ell^{a(nu_i)}.
  std::int64_t torsion_order(int i) const { return torsion_[i]; }
  const TameParams& params() const { return *params_; }
  const std::shared_ptr<const TameParams>& params_ptr() const { return params_; }

  friend bool operator==(const Torus& a, const Torus& b) { return a.parts_ == b.parts_; }

 private:
  std::shared_ptr<const TameParams> params_;
  Partition parts_;
  std::vector<std::int64_t> torsion_;
  int n_ = 0;
};

/// Laurent monomial prod Q_i^{q_i} zeta_i^{t_i}, t_i modulo the factor's torsion order.
struct Monomial {
  std::vector<int> qexp;
  std::vector<std::int64_t> texp;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Character of a torus: per factor a global inertia exponent and a Frobenius value.
struct Character {
  std::vector<std::int64_t> C;
  std::vector<Cyclotomic> alpha;
};

/// Element of the group algebra of T / T^(ell) with cyclotomic coefficients.
class TorusRingElem {
 public:
  using Terms = std::map<Monomial, Cyclotomic>;

  explicit TorusRingElem(const Torus& torus) : torus_(torus) {}
  static TorusRingElem constant(const Torus& torus, const Cyclotomic& c);
  static TorusRingElem monomial(const Torus& torus, Monomial m, const Cyclotomic& c);
  /// Q_i (or Q_i^k).
  static TorusRingElem Q(const Torus& torus, int i, int k = 1);
  /// zeta_i^k.
  static TorusRingElem zeta(const Torus& torus, int i, std::int64_t k = 1);

  const Torus& torus() const { return torus_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Monomial m, const Cyclotomic& c);
  Monomial unit_monomial() const;
  Cyclotomic coefficient(const Monomial& m) const;

  TorusRingElem& operator+=(const TorusRingElem& o);
  TorusRingElem& operator-=(const TorusRingElem& o);
  TorusRingElem operator-() const;
  TorusRingElem scaled(const Cyclotomic& c) const;
  friend TorusRingElem operator+(TorusRingElem a, const TorusRingElem& b) { return a += b; }
  friend TorusRingElem operator-(TorusRingElem a, const TorusRingElem& b) { return a -= b; }
  friend TorusRingElem operator*(const TorusRingElem& a, const TorusRingElem& b);
  friend bool operator==(const TorusRingElem& a, const TorusRingElem& b);
  friend bool operator!=(const TorusRingElem& a, const TorusRingElem& b) { return !(a == b); }

  /// Inverse of a single monomial with a unit coefficient.
  TorusRingElem monomial_inverse() const;
  TorusRingElem pow(int k) const;

  std::string to_string() const;

 private:
  void check_same(const TorusRingElem& o) const;

  Torus torus_;
  Terms terms_;
};

/// Sum of coefficient * prod alpha_i^{q_i} * zeta_L^{C_i t_i}.
Cyclotomic evaluate(const TorusRingElem& x, const Character& theta);

/// Whether a character is ell-ramified and well-formed on the torus.
bool is_valid_character(const Torus& torus, const Character& theta);

/// Generator of N_T: either a swap of two equal-degree factors or a Frobenius twist of one.
struct Symmetry {
  enum class Kind { swap, twist } kind = Kind::twist;
  int i = 0;
  int j = 0;
};

std::vector<Symmetry> symmetry_generators(const Torus& torus);
TorusRingElem apply_symmetry(const TorusRingElem& x, const Symmetry& g);
/// The induced action on characters, so that evaluate(g x, g theta) = evaluate(x, theta).
Character transport_character(const Torus& torus, const Character& theta, const Symmetry& g);
bool is_invariant(const TorusRingElem& x);
/// First generator that moves x, if any.
std::optional<Symmetry> first_moving_symmetry(const TorusRingElem& x);
/// Average over the finite group generated by the symmetries.
TorusRingElem symmetrize(const TorusRingElem& x);

/// Closed-form trace element for the word sigma^e Fr^f.
TorusRingElem trace_element(const Torus& torus, std::int64_t e, std::int64_t f, const ModeConfig& mode);

bool compact_support(const TorusRingElem& x);
/// Weighted Q-degree sum q_i * nu_i of a monomial.
int weighted_degree(const Torus& torus, const Monomial& m);

/// Substitution from a torus T' with factor block [first, first + j) of degree m
/// into the torus T obtained by merging that block into a single factor of degree j*m
/// at position target_index (other factors kept in order). Torsion exponents of the
/// merged factor are reduced modulo ell^{a(m)}; the comparison is exact modulo
/// the ideal (zeta^{ell^{a(m)}} - 1).
struct SplitSpec {
  Partition source;          // nu' (as stored)
  Partition target;          // nu (as stored)
  std::vector<int> block;    // indices in source forming the merged factor
  int target_index = 0;      // merged factor in target
  std::vector<int> spectator_map;  // source index -> target index for non-block factors (-1 for block)
  int m = 1;
  int j = 1;
};

/// Result of a comparison substitution.
struct ComparisonResult {
  TorusRingElem image;
  /// Terms whose merged Q exponent is not divisible by j (nonzero only for non-invariant input).
  TorusRingElem escaped;
};

ComparisonResult comparison_map(const TorusRingElem& x, const Torus& target, const SplitSpec& split,
                                const ModeConfig& mode);

/// Reduces torsion exponents of the given factor modulo ell^b.
TorusRingElem reduce_torsion(const TorusRingElem& x, int factor, std::int64_t modulus);

/// Builds a split that merges j copies of m inside nu' into part index target_index of nu.
SplitSpec make_split(const Partition& target, int target_index, int m);

}  // namespace curtis
