#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curtis/tame.hpp"
#include "curtis/torus.hpp"
#include "curtis/weil.hpp"

namespace curtis {

/// Relevant partitions of n, coarsest first (reverse lexicographic).
std::vector<Partition> relevant_partitions(const TameParams& p, int n);
Partition nu_max(const TameParams& p, int n);
/// Replaces each part by copies of its largest relevant divisor.
Partition associated_relevant(const TameParams& p, const Partition& nu);

/// One torus-algebra element per relevant partition of n.
class CoherentTuple {
 public:
  using Components = std::map<Partition, TorusRingElem, std::greater<Partition>>;

  CoherentTuple(std::shared_ptr<const TameParams> params, int n, ModeConfig mode);
  static CoherentTuple zero(std::shared_ptr<const TameParams> params, int n, ModeConfig mode);
  static CoherentTuple constant(std::shared_ptr<const TameParams> params, int n, ModeConfig mode,
                                const Cyclotomic& c);

  const TameParams& params() const { return *params_; }
  const std::shared_ptr<const TameParams>& params_ptr() const { return params_; }
  int n() const { return n_; }
  const ModeConfig& mode() const { return mode_; }
  const Components& components() const { return components_; }

  const TorusRingElem& at(const Partition& nu) const;
  TorusRingElem& at(const Partition& nu);
  Torus torus(const Partition& nu) const { return Torus(params_, nu); }

  bool is_zero() const;
  CoherentTuple& operator+=(const CoherentTuple& o);
  CoherentTuple& operator-=(const CoherentTuple& o);
  CoherentTuple scaled(const Cyclotomic& c) const;
  friend CoherentTuple operator+(CoherentTuple a, const CoherentTuple& b) { return a += b; }
  friend CoherentTuple operator-(CoherentTuple a, const CoherentTuple& b) { return a -= b; }
  friend CoherentTuple operator*(const CoherentTuple& a, const CoherentTuple& b);
  friend bool operator==(const CoherentTuple& a, const CoherentTuple& b);
  friend bool operator!=(const CoherentTuple& a, const CoherentTuple& b) { return !(a == b); }

  /// Component on an arbitrary partition, rebuilt from the associated relevant one.
  TorusRingElem component_at(const Partition& nu) const;

  std::string to_string() const;

 private:
  void check_same(const CoherentTuple& o) const;

  std::shared_ptr<const TameParams> params_;
  int n_;
  ModeConfig mode_;
  Components components_;
};

struct CoherenceCertificate {
  bool coherent = true;
  /// First failing constraint (empty when coherent).
  std::string failure;
  std::vector<std::string> verified;
};

CoherenceCertificate is_coherent(const CoherentTuple& t);

struct OracleReport {
  bool coherent = true;
  bool exhaustive = false;
  std::size_t points = 0;
  std::string witness;
};

/// Compares evaluations at matched pairs of characters with Frobenius values in mu_N.
/// Exhaustive when the character count is small, otherwise samples characters and
/// checks each against its equivalent realizations on other tori.
OracleReport coherence_point_oracle(const CoherentTuple& t, std::size_t samples, std::int64_t N,
                                    std::uint64_t seed = 1, std::size_t exhaustive_limit = 200000);

/// All characters of the torus with Frobenius values in mu_N.
std::vector<Character> enumerate_characters(const Torus& torus, std::int64_t N);
/// Realization of rho on the torus with one factor per irreducible piece.
std::pair<Partition, Character> minimal_realization(const TameParams& p, const SSRep& rho, const ModeConfig& mode);
/// Splits factor i of (torus, theta) into copies of degree m, when its inertia orbit allows it.
std::optional<std::pair<Partition, Character>> split_character(const Torus& torus, const Character& theta, int i,
                                                               int m, const ModeConfig& mode);

CoherentTuple trace_tuple(std::shared_ptr<const TameParams> p, int n, std::int64_t e, std::int64_t f,
                          const ModeConfig& mode);
CoherentTuple unit_Q(std::shared_ptr<const TameParams> p, int n, const ModeConfig& mode, int power = 1);

/// Splits every component by weighted Q-degree.
std::map<int, CoherentTuple> grade(const CoherentTuple& t);
/// Degree of a homogeneous tuple (nullopt for zero or mixed).
std::optional<int> homogeneous_degree(const CoherentTuple& t);

/// Tuple over A_{F,nu_1,1} (x) ... (x) A_{F,nu_r,1}: one element per sequence of relevant
/// partitions of the blocks, living on the concatenated torus (block order).
class TensorTuple {
 public:
  using Key = std::vector<Partition>;

  TensorTuple(std::shared_ptr<const TameParams> params, Partition blocks, ModeConfig mode);

  const Partition& blocks() const { return blocks_; }
  const ModeConfig& mode() const { return mode_; }
  const std::map<Key, TorusRingElem>& components() const { return components_; }
  const TameParams& params() const { return *params_; }
  const std::shared_ptr<const TameParams>& params_ptr() const { return params_; }
  TorusRingElem& at(const Key& key);
  const TorusRingElem& at(const Key& key) const;
  static Partition concat(const Key& key);

  bool is_zero() const;
  friend bool operator==(const TensorTuple& a, const TensorTuple& b);
  friend TensorTuple operator*(const TensorTuple& a, const TensorTuple& b);
  friend TensorTuple operator+(const TensorTuple& a, const TensorTuple& b);

  /// Coherence of each tensor slot with the other slots as spectators.
  CoherenceCertificate slotwise_coherent() const;

  /// Evaluation at a sequence of block characters (one per block torus).
  Cyclotomic evaluate_at(const Key& key, const std::vector<Character>& thetas) const;

 private:
  std::shared_ptr<const TameParams> params_;
  Partition blocks_;
  ModeConfig mode_;
  std::map<Key, TorusRingElem> components_;
};

/// Reorders factors: result factor k is factor perm[k] of x, on a torus with the permuted parts.
TorusRingElem permute_factors(const TorusRingElem& x, const std::vector<int>& perm);

TensorTuple ind_nu(const CoherentTuple& t, const Partition& blocks);
/// External product of coherent tuples on the blocks.
TensorTuple tensor_product(const std::vector<CoherentTuple>& factors);

/// Linear-algebra search space: all monomials with |Q exponent| <= window on the chosen
/// partitions, optionally of fixed weighted degree.
struct WindowSpec {
  std::vector<Partition> support;
  int window = 1;
  std::optional<int> degree;
  /// Only compact monomials (all Q exponents zero).
  bool compact_only = false;
};

/// Basis (over Q) of coherent tuples supported in the window.
std::vector<CoherentTuple> window_basis(std::shared_ptr<const TameParams> p, int n, const ModeConfig& mode,
                                        const WindowSpec& spec);

/// Rational coordinates of a tuple on a fixed monomial list (for rank checks).
class TupleCoordinates {
 public:
  void add(const CoherentTuple& t);
  std::size_t rank() const;
  std::vector<RationalVector> vectors() const;

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::map<std::size_t, Rational>> rows_;
  std::int64_t conductor_ = 1;
  std::vector<CoherentTuple> tuples_;
};

struct KernelSlice {
  std::vector<CoherentTuple> basis;
  /// True when the window admitted no nonzero unknowns at all.
  bool window_empty = false;
  /// Q-power of each basis element and its compact cofactor.
  std::vector<int> q_power;
  std::vector<CoherentTuple> compact_part;
};

/// Kernel of Ind_{(m,...,m)} on A_{F,n,1} inside the window |Q exponent| <= window.
KernelSlice kernel_slice_basis(std::shared_ptr<const TameParams> p, int m, int n, int window,
                               const ModeConfig& mode);

struct AxiomCheck {
  std::string name;
  std::string anchor;
  bool pass = true;
  std::string detail;
};

/// Self-test of the six axioms with B = A and f = identity, in a window of Q-degree.
std::vector<AxiomCheck> axioms_harness(std::shared_ptr<const TameParams> p, int n, const ModeConfig& mode,
                                       int window = 1, std::uint64_t seed = 7);

}  // namespace curtis
