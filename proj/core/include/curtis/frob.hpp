#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curtis/coherent.hpp"
#include "curtis/matrix.hpp"
#include "curtis/tame.hpp"
#include "curtis/torus.hpp"
#include "curtis/weil.hpp"

namespace curtis {

/// Pair (Fr, sigma) of invertible matrices with Fr sigma Fr^-1 = sigma^q.
template <class T>
struct MatrixPoint {
  Mat<T> Fr;
  Mat<T> sigma;

  std::size_t n() const { return Fr.rows(); }
  bool satisfies(std::int64_t q) const { return Fr * sigma == sigma.pow(q) * Fr; }
  MatrixPoint conjugate(const Mat<T>& g, const Mat<T>& g_inv) const {
    return MatrixPoint{g * Fr * g_inv, g * sigma * g_inv};
  }
};

using FpPoint = MatrixPoint<ModP>;
using CycPoint = MatrixPoint<Cyclotomic>;

struct PointEnumeration {
  std::vector<FpPoint> points;
  std::size_t count = 0;
  bool exhaustive = true;
  /// Pairs tried in sampling mode.
  std::size_t tried = 0;
};

/// Solutions over F_r (r prime). Exhaustive only for n <= 2 and r <= 7. Sampling draws
/// sigma uniformly from GL_n and Fr from the solutions of the linear relation, so
/// sampled points are not uniform on X.
PointEnumeration enumerate_points(std::int64_t r, int n, std::int64_t q, bool exhaustive, std::size_t samples = 0,
                                  std::uint64_t seed = 1);
/// All of GL_n(F_r) (guarded).
std::vector<Mat<ModP>> general_linear(std::int64_t r, int n);
Mat<ModP> random_invertible(std::int64_t r, int n, std::mt19937_64& rng);
Mat<Cyclotomic> random_invertible_integer(int n, std::mt19937_64& rng);

/// (sigma^{ell^A} - I)^n = 0 with A = max_{d <= n} a(d).
template <class T>
bool in_identity_component(const MatrixPoint<T>& p, std::int64_t ell, std::int64_t q) {
  const int n = static_cast<int>(p.n());
  const TameParams params(ell, q, n);
  const Mat<T> id = Mat<T>::identity(p.n(), p.sigma.zero());
  return (p.sigma.pow(params.L()) - id).pow(n).is_zero_matrix();
}

/// Eigenvalue form of the classifier over F_r: every root of the characteristic
/// polynomial of sigma (in the algebraic closure) has ell-power order.
bool eigenvalue_criterion(const FpPoint& p, std::int64_t ell);
/// Same over a cyclotomic base when all eigenvalues lie in mu_E; nullopt otherwise.
std::optional<bool> eigenvalue_criterion(const CycPoint& p, std::int64_t ell, std::int64_t conductor);

template <class T>
struct Semisimplification {
  std::vector<MatrixPoint<T>> factors;
  MatrixPoint<T> point;
};

struct LabeledSemisimplification : Semisimplification<Cyclotomic> {
  /// Composition factors as irreducible tame representations (set when every factor is ell-ramified).
  std::optional<SSRep> rep;
};

Semisimplification<ModP> semisimplify(const FpPoint& p);
/// Over Q(zeta_E): eigenvalues of sigma must lie in mu_E, otherwise ConductorError.
LabeledSemisimplification semisimplify(const CycPoint& p, std::int64_t q, const TameParams& params,
                                       std::int64_t conductor);

/// Word sigma^{e_1} Fr^{f_1} sigma^{e_2} ... as letters ('s' or 'f', exponent).
struct Word {
  std::vector<std::pair<char, int>> letters;

  static Word parse(const std::string& text);
  /// sigma^e Fr^f.
  static Word sf(int e, int f);
  std::string to_string() const;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Integer polynomial in trace words and det(Fr)^{+-1}.
class InvariantFn {
 public:
  struct Atom {
    bool is_det = false;
    Word word;
    friend auto operator<=>(const Atom&, const Atom&) = default;
  };
  /// Sorted list of atoms (with repetition) -> coefficient.
  using Terms = std::map<std::vector<Atom>, long>;

  static InvariantFn trace(const Word& w);
  /// det(Fr)^k.
  static InvariantFn det_fr(int k = 1);
  static InvariantFn constant(long c);

  const Terms& terms() const { return terms_; }
  friend InvariantFn operator+(const InvariantFn& a, const InvariantFn& b);
  friend InvariantFn operator*(const InvariantFn& a, const InvariantFn& b);
  InvariantFn scaled(long c) const;
  std::string to_string() const;

  template <class T>
  T evaluate(const MatrixPoint<T>& p) const;

 private:
  void add(std::vector<Atom> atoms, long c);
  Terms terms_;
};

template <class T>
Mat<T> word_matrix(const Word& w, const MatrixPoint<T>& p) {
  Mat<T> out = Mat<T>::identity(p.n(), p.sigma.zero());
  for (const auto& [c, e] : w.letters) out = out * (c == 's' ? p.sigma : p.Fr).pow(e);
  return out;
}

template <class T>
T InvariantFn::evaluate(const MatrixPoint<T>& p) const {
  const T zero = p.sigma.zero();
  T total = zero;
  for (const auto& [atoms, c] : terms_) {
    T term = scalar_like(zero, c);
    for (const auto& a : atoms) {
      if (a.is_det) {
        const int k = a.word.letters.front().second;
        const T d = k >= 0 ? p.Fr.determinant() : scalar_like(zero, 1) / p.Fr.determinant();
        for (int i = 0; i < (k >= 0 ? k : -k); ++i) term = term * d;
      } else {
        term = term * word_matrix(a.word, p).trace();
      }
    }
    total = total + term;
  }
  return total;
}

/// Restriction of an invariant to the diagonal subscheme X^w with w of cycle type nu
/// (cycles are consecutive blocks), as an element of the torus ring of T_w.
TorusRingElem restrict_invariant_to_Xw(const InvariantFn& inv, const Torus& torus, const ModeConfig& mode);

/// Point of X^w realizing the character theta of T_w under the same identification.
CycPoint xw_point(const Torus& torus, const Character& theta, const ModeConfig& mode);

CoherentTuple invariant_to_A(const InvariantFn& inv, std::shared_ptr<const TameParams> p, int n,
                             const ModeConfig& mode);

struct ClassifierReport {
  std::size_t points = 0;
  std::size_t in_component = 0;
  std::size_t conjugation_mismatches = 0;
  std::size_t charpoly_mismatches = 0;
  std::size_t semisimplify_mismatches = 0;
  std::size_t criterion_mismatches = 0;
  std::string witness;
  bool pass() const {
    return conjugation_mismatches == 0 && charpoly_mismatches == 0 && semisimplify_mismatches == 0 &&
           criterion_mismatches == 0;
  }
};

/// Conjugation invariance, semisimplification stability and agreement of the two
/// classifier formulations over F_r.
ClassifierReport classifier_consistency(const std::vector<FpPoint>& points, std::int64_t ell, std::int64_t q,
                                        std::size_t conjugates_per_point = 1, std::uint64_t seed = 1);

}  // namespace curtis
