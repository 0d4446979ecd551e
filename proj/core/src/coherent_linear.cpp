#include <algorithm>
#include <numeric>
#include <sstream>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

namespace {

std::string monomial_key(const Monomial& m) {
  std::ostringstream out;
  for (int v : m.qexp) out << v << ",";
  out << "|";
  for (auto v : m.texp) out << v << ",";
  return out.str();
}

void enumerate_monomials(const Torus& torus, const WindowSpec& spec, std::vector<Monomial>& out) {
  const int r = torus.rank();
  Monomial cur{std::vector<int>(r, 0), std::vector<std::int64_t>(r, 0)};
  const int w = spec.compact_only ? 0 : spec.window;
  auto rec_t = [&](auto&& self, int i) -> void {
    if (i == r) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t t = 0; t < torus.torsion_order(i); ++t) {
      cur.texp[i] = t;
      self(self, i + 1);
    }
  };
  auto rec_q = [&](auto&& self, int i) -> void {
    if (i == r) {
      if (spec.degree && weighted_degree(torus, cur) != *spec.degree) return;
      rec_t(rec_t, 0);
      return;
    }
    for (int k = -w; k <= w; ++k) {
      cur.qexp[i] = k;
      self(self, i + 1);
    }
  };
  rec_q(rec_q, 0);
}

using Residual = std::map<std::string, Rational>;

void add_coords(Residual& res, const std::string& prefix, const TorusRingElem& x, std::int64_t K, int sign) {
  for (const auto& [m, c] : x.terms()) {
    const RationalVector coords = c.coordinates(K);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      Rational& slot = res[prefix + monomial_key(m) + "#" + std::to_string(i)];
      slot += sign > 0 ? coords[i] : Rational(-coords[i]);
    }
  }
}

std::int64_t split_conductor(const TameParams& p, int n) {
  std::int64_t K = 1;
  for (const auto& nu : relevant_partitions(p, n)) {
    for (int d : nu) {
      for (int m : p.relevant_degrees()) {
        if (m < d && d % m == 0) K = std::lcm<std::int64_t>(K, d / m);
      }
    }
  }
  return K;
}

// Linear residual of the coherence constraints (zero iff coherent).
Residual coherence_residual(const CoherentTuple& t, std::int64_t K) {
  Residual res;
  for (const auto& [nu, x] : t.components()) {
    for (const auto& g : symmetry_generators(x.torus())) {
      const std::string prefix = "I" + partition_string(nu) + std::to_string(static_cast<int>(g.kind)) +
                                 std::to_string(g.i) + std::to_string(g.j) + ":";
      add_coords(res, prefix, apply_symmetry(x, g), K, 1);
      add_coords(res, prefix, x, K, -1);
    }
  }
  for (const auto& [nu, x] : t.components()) {
    for (int i = 0; i < static_cast<int>(nu.size()); ++i) {
      if (i > 0 && nu[i] == nu[i - 1]) continue;
      for (int m : t.params().relevant_degrees()) {
        if (m >= nu[i] || nu[i] % m != 0) continue;
        const SplitSpec s = make_split(nu, i, m);
        const std::string prefix = "S" + partition_string(nu) + std::to_string(i) + "/" + std::to_string(m) + ":";
        auto img = comparison_map(t.at(s.source), x.torus(), s, t.mode());
        const std::int64_t mod = t.params().torsion_order(m);
        add_coords(res, prefix, reduce_torsion(img.image, i, mod), K, 1);
        add_coords(res, prefix, reduce_torsion(x, i, mod), K, -1);
        add_coords(res, "E" + prefix, img.escaped, K, 1);
      }
    }
  }
  for (auto it = res.begin(); it != res.end();) {
    if (it->second == 0) it = res.erase(it); else ++it;
  }
  return res;
}

}  // namespace

std::vector<CoherentTuple> window_basis(std::shared_ptr<const TameParams> p, int n, const ModeConfig& mode,
                                        const WindowSpec& spec) {
  struct Var {
    Partition nu;
    Monomial m;
  };
  std::vector<Var> vars;
  for (const auto& nu : spec.support) {
    Torus torus(p, nu);
    std::vector<Monomial> monos;
    enumerate_monomials(torus, spec, monos);
    for (auto& m : monos) vars.push_back(Var{nu, std::move(m)});
  }
  if (vars.size() > 20000) throw GuardError("window_basis: more than 20000 unknowns");
  const std::int64_t K = split_conductor(*p, n);

  std::map<std::string, std::size_t> row_index;
  std::vector<SparseRow> rows;
  const CoherentTuple zero = CoherentTuple::zero(p, n, mode);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    CoherentTuple unit = zero;
    unit.at(vars[v].nu).add_term(vars[v].m, Cyclotomic::from_int(1));
    for (const auto& [key, value] : coherence_residual(unit, K)) {
      auto it = row_index.find(key);
      if (it == row_index.end()) {
        it = row_index.emplace(key, rows.size()).first;
        rows.emplace_back();
      }
      rows[it->second][v] = value;
    }
  }
  RowEchelon ech(vars.size());
  for (auto& row : rows) ech.add_row(std::move(row));

  std::vector<CoherentTuple> basis;
  for (const auto& vec : ech.nullspace()) {
    CoherentTuple t = zero;
    mpz_class common = 1;
    for (const auto& c : vec) {
      if (c != 0) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vec[v] == 0) continue;
      t.at(vars[v].nu).add_term(vars[v].m, Cyclotomic::from_rational(vec[v] * common));
    }
    basis.push_back(std::move(t));
  }
  return basis;
}

void TupleCoordinates::add(const CoherentTuple& t) {
  tuples_.push_back(t);
  for (const auto& [nu, x] : t.components()) {
    for (const auto& [m, c] : x.terms()) conductor_ = std::lcm(conductor_, c.conductor());
  }
}

std::vector<RationalVector> TupleCoordinates::vectors() const {
  std::map<std::string, std::size_t> index;
  std::vector<std::map<std::size_t, Rational>> rows;
  for (const auto& t : tuples_) {
    std::map<std::size_t, Rational> row;
    for (const auto& [nu, x] : t.components()) {
      for (const auto& [m, c] : x.terms()) {
        const RationalVector coords = c.coordinates(conductor_);
        for (std::size_t i = 0; i < coords.size(); ++i) {
          if (coords[i] == 0) continue;
          const std::string key = partition_string(nu) + monomial_key(m) + "#" + std::to_string(i);
          auto it = index.emplace(key, index.size()).first;
          row[it->second] = coords[i];
        }
      }
    }
    rows.push_back(std::move(row));
  }
  std::vector<RationalVector> out;
  for (const auto& row : rows) {
    RationalVector v(index.size());
    for (const auto& [i, c] : row) v[i] = c;
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t TupleCoordinates::rank() const { return rank_of(vectors()); }

namespace {

// Whether the multiset nu splits into groups, each a partition of m.
bool splits_into_blocks(std::vector<int> parts, int m, int blocks) {
  if (blocks == 0) return parts.empty();
  if (parts.empty()) return false;
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  // Choose a sub-multiset containing the largest part that sums to m.
  const int first = parts.front();
  std::vector<int> rest(parts.begin() + 1, parts.end());
  const int need = m - first;
  if (need < 0) return false;
  const int k = static_cast<int>(rest.size());
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    int sum = 0;
    std::vector<int> left;
    for (int i = 0; i < k; ++i) {
      if (mask & (1ULL << i)) sum += rest[i]; else left.push_back(rest[i]);
    }
    if (sum == need && splits_into_blocks(left, m, blocks - 1)) return true;
  }
  return false;
}

}  // namespace

KernelSlice kernel_slice_basis(std::shared_ptr<const TameParams> p, int m, int n, int window,
                               const ModeConfig& mode) {
  if (m < 1 || n % m != 0 || m == n) throw DomainError("kernel_slice_basis: m must properly divide n");
  KernelSlice out;
  WindowSpec spec;
  spec.window = window;
  for (const auto& nu : relevant_partitions(*p, n)) {
    if (!splits_into_blocks(nu, m, n / m)) spec.support.push_back(nu);
  }
  if (spec.support.empty()) {
    out.window_empty = true;
    return out;
  }
  for (int deg = -window * n; deg <= window * n; ++deg) {
    spec.degree = deg;
    for (auto& t : window_basis(p, n, mode, spec)) out.basis.push_back(std::move(t));
  }
  for (const auto& b : out.basis) {
    int k = 0;
    bool found = false, uniform = true;
    for (const auto& [nu, x] : b.components()) {
      for (const auto& [mono, c] : x.terms()) {
        for (int v : mono.qexp) {
          if (!found) {
            k = v;
            found = true;
          } else if (v != k) {
            uniform = false;
          }
        }
      }
    }
    out.q_power.push_back(uniform ? k : 0);
    out.compact_part.push_back(uniform ? b * unit_Q(p, n, mode, -k) : b);
  }
  return out;
}

}  // namespace curtis
