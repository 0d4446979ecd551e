#include <algorithm>
#include <numeric>

#include "curtis/errors.hpp"
#include "curtis/frob.hpp"

namespace curtis {

namespace {

template <class T>
bool extends_basis(const std::vector<std::vector<T>>& basis, const std::vector<T>& v, std::size_t n, const T& zero) {
  std::vector<std::vector<T>> cols = basis;
  cols.push_back(v);
  return rank(from_columns(cols, n, zero)) == cols.size();
}

// Submodule generated by v under the given matrices.
template <class T>
std::vector<std::vector<T>> spin(const std::vector<T>& v, const std::vector<Mat<T>>& gens) {
  const std::size_t n = v.size();
  const T zero = gens.front().zero();
  std::vector<std::vector<T>> basis;
  std::vector<std::vector<T>> queue{v};
  while (!queue.empty() && basis.size() < n) {
    std::vector<T> w = std::move(queue.back());
    queue.pop_back();
    if (!extends_basis(basis, w, n, zero)) continue;
    basis.push_back(w);
    for (const auto& g : gens) queue.push_back(g.apply(w));
  }
  return basis;
}

// Restriction to the invariant subspace W and the induced action on the quotient.
template <class T>
void split(const MatrixPoint<T>& p, const std::vector<std::vector<T>>& W, MatrixPoint<T>& sub, MatrixPoint<T>& quo) {
  const std::size_t n = p.n();
  const std::size_t k = W.size();
  const T zero = p.sigma.zero();
  std::vector<std::vector<T>> cols = W;
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    std::vector<T> e(n, zero);
    e[i] = scalar_like(zero, 1);
    if (extends_basis(cols, e, n, zero)) cols.push_back(std::move(e));
  }
  const Mat<T> B = from_columns(cols, n, zero);
  const Mat<T> Binv = *B.inverse();
  const Mat<T> F = Binv * p.Fr * B;
  const Mat<T> S = Binv * p.sigma * B;
  auto block = [&](const Mat<T>& M, std::size_t off, std::size_t size) {
    Mat<T> out(size, size, zero);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) out(i, j) = M(off + i, off + j);
    }
    return out;
  };
  sub = MatrixPoint<T>{block(F, 0, k), block(S, 0, k)};
  quo = MatrixPoint<T>{block(F, k, n - k), block(S, k, n - k)};
}

template <class T>
MatrixPoint<T> direct_sum(const std::vector<MatrixPoint<T>>& factors, const T& zero) {
  std::vector<Mat<T>> fr, sg;
  for (const auto& f : factors) {
    fr.push_back(f.Fr);
    sg.push_back(f.sigma);
  }
  return MatrixPoint<T>{block_diagonal(fr, zero), block_diagonal(sg, zero)};
}

void ss_finite(const FpPoint& p, std::vector<FpPoint>& factors) {
  const std::size_t n = p.n();
  if (n == 0) return;
  const ModP zero = p.sigma.zero();
  const std::int64_t r = zero.r;
  const std::vector<Mat<ModP>> gens{p.Fr, *p.Fr.inverse(), p.sigma};
  std::vector<std::vector<ModP>> best;
  // Projective representatives: first nonzero coordinate is 1.
  const std::int64_t total = nt::ipow(r, static_cast<int>(n));
  if (total > 100000) throw GuardError("semisimplify: r^n exceeds 10^5");
  for (std::int64_t code = 1; code < total && (best.empty() || best.size() > 1); ++code) {
    std::vector<ModP> v(n, zero);
    std::int64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = ModP(c % r, r);
      c /= r;
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](const ModP& x) { return x.v != 0; });
    if (lead->v != 1) continue;
    auto W = spin(v, gens);
    if (best.empty() || W.size() < best.size()) best = std::move(W);
  }
  if (best.size() == n) {
    factors.push_back(p);
    return;
  }
  FpPoint sub, quo;
  split(p, best, sub, quo);
  factors.push_back(sub);
  ss_finite(quo, factors);
}

std::int64_t exponent_orbit_size(std::int64_t k, std::int64_t q, std::int64_t E) {
  std::int64_t x = nt::mulmod(k, q, E);
  std::int64_t d = 1;
  while (x != nt::mod(k, E)) {
    x = nt::mulmod(x, q, E);
    ++d;
  }
  return d;
}

// Smallest conductor containing every eigenvalue of sigma.
std::int64_t minimal_eigen_conductor(const CycPoint& p, std::int64_t q, std::int64_t E) {
  std::int64_t M = 1;
  for (std::size_t k = 1; k <= p.n(); ++k) M = std::lcm(M, nt::ipow(q, static_cast<int>(k)) - 1);
  for (auto d : nt::divisors(M)) {
    const std::int64_t cand = std::lcm(E, d);
    if (eigenvalue_criterion(p, 2, cand).has_value()) return cand;
  }
  return std::lcm(E, M);
}

std::vector<Cyclotomic> eigen_candidates(const Mat<Cyclotomic>& B, std::int64_t E) {
  std::vector<Cyclotomic> out;
  for (std::size_t i = 0; i < B.rows(); ++i) out.push_back(B(i, i));
  const std::int64_t E2 = std::lcm<std::int64_t>(E, 2);
  for (long num : {1L, 2L, 3L, 4L}) {
    for (long den : {1L, 2L, 3L, 4L}) {
      if (std::gcd(num, den) != 1) continue;
      for (std::int64_t k = 0; k < E2; ++k) {
        out.push_back(Cyclotomic::zeta(E2, k) * Cyclotomic::from_rational(Rational(num, den)));
      }
    }
  }
  return out;
}

void ss_cyclotomic(const CycPoint& p, std::int64_t q, const TameParams& params, std::int64_t E,
                   std::vector<CycPoint>& factors, std::vector<IrrRep>& labels, bool& labeled) {
  const std::size_t n = p.n();
  if (n == 0) return;
  const Cyclotomic zero(1);
  const Mat<Cyclotomic> id = Mat<Cyclotomic>::identity(n, zero);

  std::int64_t k = 0;
  std::vector<std::vector<Cyclotomic>> V;
  std::vector<std::size_t> free_cols;
  for (; k < E; ++k) {
    free_cols.clear();
    V = kernel(p.sigma - id.scaled(Cyclotomic::zeta(E, k)), &free_cols);
    if (!V.empty()) break;
  }
  if (V.empty()) {
    throw ConductorError("semisimplify: eigenvalues of sigma are not in mu_" + std::to_string(E),
                         minimal_eigen_conductor(p, q, E));
  }
  const Cyclotomic zeta = Cyclotomic::zeta(E, k);
  const std::int64_t d = exponent_orbit_size(k, q, E);

  // Fr^{-d} preserves the zeta-eigenspace.
  const Mat<Cyclotomic> Fd = p.Fr.pow(-d);
  const std::size_t m = V.size();
  Mat<Cyclotomic> B(m, m, zero);
  for (std::size_t j = 0; j < m; ++j) {
    const auto w = Fd.apply(V[j]);
    for (std::size_t i = 0; i < m; ++i) B(i, j) = w[free_cols[i]];
  }
  std::vector<Cyclotomic> coords;
  Cyclotomic psi;
  if (m == 1) {
    coords = {Cyclotomic::from_int(1)};
    psi = B(0, 0);
  } else {
    const Mat<Cyclotomic> idm = Mat<Cyclotomic>::identity(m, zero);
    for (const auto& cand : eigen_candidates(B, E)) {
      auto ker = kernel(B - idm.scaled(cand));
      if (!ker.empty()) {
        coords = ker.front();
        psi = cand;
        break;
      }
    }
    if (coords.empty()) throw DomainError("semisimplify: no Frobenius eigenvalue found over the base field");
  }
  std::vector<Cyclotomic> v(n, zero);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) v[i] += coords[j] * V[j][i];
  }
  const std::vector<Mat<Cyclotomic>> gens{p.Fr, *p.Fr.inverse(), p.sigma};
  const auto W = spin(v, gens);
  if (static_cast<std::int64_t>(W.size()) != d) throw std::logic_error("semisimplify: eigen-spin has unexpected size");

  const auto root = zeta.as_root_of_unity();
  const std::int64_t order = root ? root->order : 1;
  if (labeled && params.L() % order == 0) {
    const std::int64_t C = (root ? root->exponent : 0) * (params.L() / order);
    IrrRep rep{orbit_of(params, C), psi.inverse()};
    if (rep.orbit.size != d) throw std::logic_error("semisimplify: orbit size mismatch");
    labels.push_back(rep);
  } else {
    labeled = false;
  }

  if (W.size() == n) {
    factors.push_back(p);
    return;
  }
  CycPoint sub, quo;
  split(p, W, sub, quo);
  factors.push_back(sub);
  ss_cyclotomic(quo, q, params, E, factors, labels, labeled);
}

}  // namespace

Semisimplification<ModP> semisimplify(const FpPoint& p) {
  Semisimplification<ModP> out;
  ss_finite(p, out.factors);
  out.point = direct_sum(out.factors, p.sigma.zero());
  return out;
}

LabeledSemisimplification semisimplify(const CycPoint& p, std::int64_t q, const TameParams& params,
                                       std::int64_t conductor) {
  LabeledSemisimplification out;
  std::vector<IrrRep> labels;
  bool labeled = true;
  ss_cyclotomic(p, q, params, conductor, out.factors, labels, labeled);
  out.point = direct_sum(out.factors, p.sigma.zero());
  if (labeled) out.rep = SSRep(labels);
  return out;
}

}  // namespace curtis
