#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curtis/coherent.hpp"
#include "curtis/cyclotomic.hpp"
#include "curtis/torus.hpp"

namespace curtis {

/// Frobenius orbit of a p'-torsion point c/den of Q/Z under multiplication by q.
/// The representative is the smallest numerator in the orbit, in lowest terms.
struct FqOrbit {
  std::int64_t num = 0;
  std::int64_t den = 1;
  int size = 1;

  friend auto operator<=>(const FqOrbit&, const FqOrbit&) = default;
};

FqOrbit orbit_of_fraction(std::int64_t q, std::int64_t num, std::int64_t den);

/// Semisimple class in the dual group: a sorted multiset of orbits.
struct SSClass {
  std::vector<FqOrbit> orbits;

  int n() const;
  /// Every eigenvalue has order prime to ell.
  bool is_ell_regular(std::int64_t ell) const;
  std::string to_string() const;
  friend auto operator<=>(const SSClass&, const SSClass&) = default;
};

/// Class of a multiset of eigenvalues given as fractions num/den.
SSClass ss_class_from_eigenvalues(std::int64_t q, const std::vector<std::pair<std::int64_t, std::int64_t>>& eig);

std::vector<SSClass> enumerate_ss_classes(std::int64_t q, int n);

/// Order q^{nu_i} - 1 of each cyclic factor of the finite torus.
std::vector<std::int64_t> finite_factor_orders(std::int64_t q, const Partition& nu);

/// Element of the group ring of T_nu(F_q) = prod F_{q^{nu_i}}^x.
/// Group elements are exponent vectors of the fixed generators.
class FiniteTorusAlgElem {
 public:
  using Key = std::vector<std::int64_t>;

  FiniteTorusAlgElem(std::int64_t q, Partition nu);
  static FiniteTorusAlgElem constant(std::int64_t q, Partition nu, const Cyclotomic& c);

  std::int64_t q() const { return q_; }
  const Partition& nu() const { return nu_; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  const std::map<Key, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Key g, const Cyclotomic& c);
  FiniteTorusAlgElem& operator+=(const FiniteTorusAlgElem& o);
  FiniteTorusAlgElem scaled(const Cyclotomic& c) const;
  friend FiniteTorusAlgElem operator+(FiniteTorusAlgElem a, const FiniteTorusAlgElem& b) { return a += b; }
  friend FiniteTorusAlgElem operator*(const FiniteTorusAlgElem& a, const FiniteTorusAlgElem& b);
  friend bool operator==(const FiniteTorusAlgElem& a, const FiniteTorusAlgElem& b);

  /// Whether every coefficient lies in Z_(ell)[zeta].
  bool is_ell_integral(std::int64_t ell) const;

 private:
  std::int64_t q_;
  Partition nu_;
  std::vector<std::int64_t> orders_;
  std::map<Key, Cyclotomic> terms_;
};

/// Character of T_nu(F_q) attached to t in the dual torus: generator i maps to zeta_{q^{nu_i}-1}^{t_i}.
struct DualCharacter {
  Partition nu;
  std::vector<std::int64_t> t;
};

DualCharacter dual_character(std::int64_t q, const Partition& nu, std::vector<std::int64_t> t);
Cyclotomic evaluate(const FiniteTorusAlgElem& x, const DualCharacter& chi);
/// Value of the character on one group element.
Cyclotomic character_value(std::int64_t q, const DualCharacter& chi, const FiniteTorusAlgElem::Key& g);
SSClass ss_class_of(std::int64_t q, const DualCharacter& chi);
/// All characters of T_nu(F_q) (guarded).
std::vector<DualCharacter> all_dual_characters(std::int64_t q, const Partition& nu);

/// One group-ring element per partition of n.
class FiniteCoherentTuple {
 public:
  using Components = std::map<Partition, FiniteTorusAlgElem, std::greater<Partition>>;

  FiniteCoherentTuple(std::int64_t q, int n);
  static FiniteCoherentTuple constant(std::int64_t q, int n, const Cyclotomic& c);

  std::int64_t q() const { return q_; }
  int n() const { return n_; }
  const Components& components() const { return components_; }
  Components& mutable_components() { return components_; }
  const FiniteTorusAlgElem& at(const Partition& nu) const;
  FiniteTorusAlgElem& at(const Partition& nu);

  bool is_zero() const;
  FiniteCoherentTuple& operator+=(const FiniteCoherentTuple& o);
  FiniteCoherentTuple scaled(const Cyclotomic& c) const;
  friend FiniteCoherentTuple operator+(FiniteCoherentTuple a, const FiniteCoherentTuple& b) { return a += b; }
  friend FiniteCoherentTuple operator*(const FiniteCoherentTuple& a, const FiniteCoherentTuple& b);
  friend bool operator==(const FiniteCoherentTuple& a, const FiniteCoherentTuple& b);

  /// Value at a class (evaluated on the torus of its minimal realization).
  Cyclotomic value_at(const SSClass& s) const;

 private:
  std::int64_t q_;
  int n_;
  Components components_;
};

struct FiniteCoherence {
  bool coherent = true;
  std::string witness;
};

FiniteCoherence is_coherent_finite(const FiniteCoherentTuple& t);

struct FiniteBasis {
  std::vector<FiniteCoherentTuple> basis;
  std::size_t class_count = 0;
  bool rank_matches() const { return basis.size() == class_count; }
};

/// Q-basis of the coherent tuples (the coherence constraints are Galois stable).
FiniteBasis coherent_basis(std::int64_t q, int n);

/// Block idempotent e_s for an ell-regular class s.
FiniteCoherentTuple idempotent_tuple(std::int64_t q, int n, std::int64_t ell, const SSClass& s);
std::vector<SSClass> ell_regular_classes(std::int64_t q, int n, std::int64_t ell);
/// Every eigenvalue has ell-power order (the unipotent block).
bool is_ell_power_class(const SSClass& s, std::int64_t ell);
/// Class of the ell'-parts of the eigenvalues.
SSClass ell_prime_part(std::int64_t q, const SSClass& s, std::int64_t ell);

/// The unique tuple with prescribed values at every class.
FiniteCoherentTuple interpolate(std::int64_t q, int n, const std::map<SSClass, Cyclotomic>& values);

/// Theta: the e_s block of A_{q,n} to the unipotent block of A_{q^d,n/d} and back.
/// s must consist of n/d copies of one orbit of size d.
class ThetaTwist {
 public:
  ThetaTwist(std::int64_t q, int n, std::int64_t ell, SSClass s);

  int d() const { return d_; }
  std::int64_t target_q() const { return target_q_; }
  int target_n() const { return n_ / d_; }

  /// Class over F_q matching an ell-power class over F_{q^d}.
  SSClass transport(const SSClass& u) const;
  FiniteCoherentTuple forward(const FiniteCoherentTuple& x) const;
  FiniteCoherentTuple backward(const FiniteCoherentTuple& y) const;

 private:
  std::int64_t q_;
  int n_;
  std::int64_t ell_;
  SSClass s_;
  int d_ = 1;
  std::int64_t target_q_;
  FqOrbit orbit_;
};

/// Image in the compact part of A_{F,n,1} of an element of the unipotent block.
CoherentTuple embed_into_A(const FiniteCoherentTuple& x, std::shared_ptr<const TameParams> p,
                           const ModeConfig& mode);

}  // namespace curtis
