#include <algorithm>
#include <cmath>

#include "curtis/errors.hpp"
#include "curtis/frob.hpp"

namespace curtis {

namespace {

constexpr double kGlGuard = 1e6;

using Poly = std::vector<std::int64_t>;  // lowest degree first, over F_r

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly& g, std::int64_t r) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::int64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = nt::mod(f[shift + i] - lead * g[i], r);
    trim(f);
  }
  return f;
}

Poly poly_div_exact(const Poly& f, const Poly& g, std::int64_t r) {
  Poly rem = f;
  trim(rem);
  const std::size_t dg = g.size() - 1;
  Poly quo(rem.size() >= g.size() ? rem.size() - dg : 0, 0);
  while (rem.size() > dg) {
    const std::int64_t lead = rem.back();
    const std::size_t shift = rem.size() - 1 - dg;
    quo[shift] = lead;
    for (std::size_t i = 0; i <= dg; ++i) rem[shift + i] = nt::mod(rem[shift + i] - lead * g[i], r);
    trim(rem);
  }
  return quo;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& g, std::int64_t r) {
  Poly out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = nt::mod(out[i + j] + a[i] * b[j], r);
  }
  return poly_mod(out, g, r);
}

// Order of x in F_r[x]/(g) for irreducible g with g(0) != 0.
std::int64_t order_of_x(const Poly& g, std::int64_t r) {
  const Poly x{0, 1};
  Poly cur = poly_mod(x, g, r);
  std::int64_t k = 1;
  const std::int64_t bound = nt::ipow(r, static_cast<int>(g.size()) - 1);
  while (!(cur.size() == 1 && cur[0] == 1)) {
    cur = poly_mul_mod(cur, x, g, r);
    if (++k > bound) throw std::logic_error("order_of_x: polynomial is not irreducible");
  }
  return k;
}

bool is_ell_power(std::int64_t k, std::int64_t ell) { return nt::prime_free_part(k, ell) == 1; }

}  // namespace

std::vector<Mat<ModP>> general_linear(std::int64_t r, int n) {
  if (!nt::is_prime(r)) throw DomainError("only prime fields F_r are supported");
  if (std::pow(static_cast<double>(r), n * n) > kGlGuard) throw GuardError("GL_n(F_r) enumeration exceeds 10^6");
  const ModP zero(0, r);
  std::vector<Mat<ModP>> out;
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<std::int64_t> digits(cells, 0);
  while (true) {
    Mat<ModP> m(n, n, zero);
    for (std::size_t c = 0; c < cells; ++c) m(c / n, c % n) = ModP(digits[c], r);
    if (!is_zero(m.determinant())) out.push_back(std::move(m));
    std::size_t c = 0;
    while (c < cells && ++digits[c] == r) digits[c++] = 0;
    if (c == cells) break;
  }
  return out;
}

Mat<ModP> random_invertible(std::int64_t r, int n, std::mt19937_64& rng) {
  const ModP zero(0, r);
  while (true) {
    Mat<ModP> m(n, n, zero);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = ModP(static_cast<std::int64_t>(rng() % r), r);
    }
    if (!is_zero(m.determinant())) return m;
  }
}

Mat<Cyclotomic> random_invertible_integer(int n, std::mt19937_64& rng) {
  while (true) {
    Mat<Cyclotomic> m(n, n, Cyclotomic(1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = Cyclotomic::from_int(static_cast<long>(rng() % 5) - 2);
    }
    if (!is_zero(m.determinant())) return m;
  }
}

PointEnumeration enumerate_points(std::int64_t r, int n, std::int64_t q, bool exhaustive, std::size_t samples,
                                  std::uint64_t seed) {
  if (!nt::is_prime(r)) throw DomainError("only prime fields F_r are supported");
  if (n < 1) throw DomainError("n must be positive");
  PointEnumeration out;
  if (exhaustive) {
    if (n > 2 || r > 7) throw GuardError("exhaustive enumeration needs n <= 2 and r <= 7");
    const auto gl = general_linear(r, n);
    for (const auto& s : gl) {
      const Mat<ModP> sq = s.pow(q);
      for (const auto& f : gl) {
        ++out.tried;
        if (f * s == sq * f) out.points.push_back(FpPoint{f, s});
      }
    }
    out.count = out.points.size();
    return out;
  }
  out.exhaustive = false;
  std::mt19937_64 rng(seed);
  const ModP zero(0, r);
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  for (std::size_t i = 0; i < samples; ++i) {
    ++out.tried;
    const Mat<ModP> s = random_invertible(r, n, rng);
    const Mat<ModP> sq = s.pow(q);
    // Fr s - s^q Fr = 0 is linear in the entries of Fr.
    Mat<ModP> sys(cells, cells, zero);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const std::size_t row = static_cast<std::size_t>(a) * n + b;
        for (int k = 0; k < n; ++k) {
          sys(row, static_cast<std::size_t>(a) * n + k) = sys(row, static_cast<std::size_t>(a) * n + k) + s(k, b);
          sys(row, static_cast<std::size_t>(k) * n + b) = sys(row, static_cast<std::size_t>(k) * n + b) - sq(a, k);
        }
      }
    }
    const auto sols = kernel(sys);
    for (int attempt = 0; attempt < 8 && !sols.empty(); ++attempt) {
      Mat<ModP> f(n, n, zero);
      for (const auto& v : sols) {
        const ModP c(static_cast<std::int64_t>(rng() % r), r);
        for (std::size_t k = 0; k < cells; ++k) f(k / n, k % n) = f(k / n, k % n) + c * v[k];
      }
      if (is_zero(f.determinant())) continue;
      out.points.push_back(FpPoint{f, s});
      break;
    }
  }
  out.count = out.points.size();
  return out;
}

bool eigenvalue_criterion(const FpPoint& p, std::int64_t ell) {
  const std::int64_t r = p.sigma.zero().r;
  const auto cp = char_poly(p.sigma);
  Poly f;
  for (const auto& c : cp) f.push_back(c.v);
  trim(f);
  // Strip irreducible factors in increasing degree; each divisor found is irreducible.
  for (int d = 1; static_cast<int>(f.size()) - 1 >= d; ++d) {
    const std::int64_t count = nt::ipow(r, d);
    for (std::int64_t code = 0; code < count && static_cast<int>(f.size()) - 1 >= d; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::int64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % r;
        c /= r;
      }
      if (g[0] == 0) continue;
      bool checked = false;
      while (static_cast<int>(f.size()) - 1 >= d && poly_mod(f, g, r).empty()) {
        if (!checked) {
          if (!is_ell_power(order_of_x(g, r), ell)) return false;
          checked = true;
        }
        f = poly_div_exact(f, g, r);
      }
    }
  }
  return true;
}

std::optional<bool> eigenvalue_criterion(const CycPoint& p, std::int64_t ell, std::int64_t conductor) {
  std::vector<Cyclotomic> f = char_poly(p.sigma);
  bool all_ell = true;
  // Synthetic division by (x - z) for every root z in mu_E.
  for (std::int64_t k = 0; k < conductor && f.size() > 1; ++k) {
    const Cyclotomic z = Cyclotomic::zeta(conductor, k);
    while (f.size() > 1) {
      std::vector<Cyclotomic> quo(f.size() - 1, Cyclotomic(1));
      Cyclotomic acc = f.back();
      for (std::size_t i = f.size() - 1; i-- > 0;) {
        quo[i] = acc;
        acc = f[i] + acc * z;
      }
      if (!acc.is_zero()) break;
      f = std::move(quo);
      const auto root = z.as_root_of_unity();
      if (!is_ell_power(root ? root->order : 1, ell)) all_ell = false;
    }
  }
  if (f.size() > 1) return std::nullopt;
  return all_ell;
}

ClassifierReport classifier_consistency(const std::vector<FpPoint>& points, std::int64_t ell, std::int64_t q,
                                        std::size_t conjugates_per_point, std::uint64_t seed) {
  ClassifierReport rep;
  std::mt19937_64 rng(seed);
  for (const auto& p : points) {
    ++rep.points;
    const bool c0 = in_identity_component(p, ell, q);
    if (c0) ++rep.in_component;
    if (c0 != eigenvalue_criterion(p, ell)) {
      ++rep.criterion_mismatches;
      if (rep.witness.empty()) rep.witness = "criteria disagree at Fr=" + p.Fr.to_string() + " sigma=" + p.sigma.to_string();
    }
    const auto cp = char_poly(p.sigma);
    const std::int64_t r = p.sigma.zero().r;
    for (std::size_t k = 0; k < conjugates_per_point; ++k) {
      const Mat<ModP> g = random_invertible(r, static_cast<int>(p.n()), rng);
      const FpPoint h = p.conjugate(g, *g.inverse());
      if (!h.satisfies(q) || in_identity_component(h, ell, q) != c0) {
        ++rep.conjugation_mismatches;
        if (rep.witness.empty()) rep.witness = "conjugate changes the classifier at sigma=" + p.sigma.to_string();
      }
      if (char_poly(h.sigma) != cp) {
        ++rep.charpoly_mismatches;
        if (rep.witness.empty()) rep.witness = "conjugate changes char poly at sigma=" + p.sigma.to_string();
      }
    }
    const auto ss = semisimplify(p);
    if (!ss.point.satisfies(q) || in_identity_component(ss.point, ell, q) != c0 || char_poly(ss.point.sigma) != cp) {
      ++rep.semisimplify_mismatches;
      if (rep.witness.empty()) rep.witness = "semisimplification changes the classifier at sigma=" + p.sigma.to_string();
    }
  }
  return rep;
}

}  // namespace curtis
