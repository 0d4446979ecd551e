#include <algorithm>
#include <numeric>
#include <sstream>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

std::vector<Partition> relevant_partitions(const TameParams& p, int n) {
  std::vector<Partition> out;
  for (auto& nu : nt::partitions(n)) {
    bool ok = true;
    for (int d : nu) ok = ok && p.is_relevant_degree(d);
    if (ok) out.push_back(nu);
  }
  return out;
}

Partition nu_max(const TameParams& p, int n) { return relevant_partitions(p, n).front(); }

Partition associated_relevant(const TameParams& p, const Partition& nu) {
  Partition out;
  for (int d : nu) {
    const int m = p.largest_relevant_divisor(d);
    for (int k = 0; k < d / m; ++k) out.push_back(m);
  }
  return out;
}

CoherentTuple::CoherentTuple(std::shared_ptr<const TameParams> params, int n, ModeConfig mode)
    : params_(std::move(params)), n_(n), mode_(mode) {
  if (n > params_->n_max()) throw DomainError("CoherentTuple: n exceeds the configured n_max");
  for (const auto& nu : relevant_partitions(*params_, n)) {
    components_.emplace(nu, TorusRingElem(Torus(params_, nu)));
  }
}

CoherentTuple CoherentTuple::zero(std::shared_ptr<const TameParams> params, int n, ModeConfig mode) {
  return CoherentTuple(std::move(params), n, mode);
}

CoherentTuple CoherentTuple::constant(std::shared_ptr<const TameParams> params, int n, ModeConfig mode,
                                      const Cyclotomic& c) {
  CoherentTuple t(std::move(params), n, mode);
  for (auto& [nu, x] : t.components_) x = TorusRingElem::constant(x.torus(), c);
  return t;
}

const TorusRingElem& CoherentTuple::at(const Partition& nu) const {
  auto it = components_.find(nu);
  if (it == components_.end()) throw DomainError("CoherentTuple: no component " + partition_string(nu));
  return it->second;
}

TorusRingElem& CoherentTuple::at(const Partition& nu) {
  auto it = components_.find(nu);
  if (it == components_.end()) throw DomainError("CoherentTuple: no component " + partition_string(nu));
  return it->second;
}

bool CoherentTuple::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

void CoherentTuple::check_same(const CoherentTuple& o) const {
  if (n_ != o.n_ || !(*params_ == *o.params_) || mode_.mode != o.mode_.mode) {
    throw DomainError("CoherentTuple: incompatible operands");
  }
}

CoherentTuple& CoherentTuple::operator+=(const CoherentTuple& o) {
  check_same(o);
  for (auto& [nu, x] : components_) x += o.at(nu);
  return *this;
}

CoherentTuple& CoherentTuple::operator-=(const CoherentTuple& o) {
  check_same(o);
  for (auto& [nu, x] : components_) x -= o.at(nu);
  return *this;
}

CoherentTuple CoherentTuple::scaled(const Cyclotomic& c) const {
  CoherentTuple r = *this;
  for (auto& [nu, x] : r.components_) x = x.scaled(c);
  return r;
}

CoherentTuple operator*(const CoherentTuple& a, const CoherentTuple& b) {
  a.check_same(b);
  CoherentTuple r = a;
  for (auto& [nu, x] : r.components_) x = a.at(nu) * b.at(nu);
  return r;
}

bool operator==(const CoherentTuple& a, const CoherentTuple& b) {
  if (a.n_ != b.n_) return false;
  for (const auto& [nu, x] : a.components_) {
    if (x != b.at(nu)) return false;
  }
  return true;
}

std::string CoherentTuple::to_string() const {
  std::ostringstream out;
  for (const auto& [nu, x] : components_) out << partition_string(nu) << ": " << x.to_string() << "\n";
  return out.str();
}

TorusRingElem permute_factors(const TorusRingElem& x, const std::vector<int>& perm) {
  Partition parts;
  for (int k : perm) parts.push_back(x.torus().part(k));
  TorusRingElem r(Torus(x.torus().params_ptr(), parts));
  for (const auto& [m, c] : x.terms()) {
    Monomial pm{std::vector<int>(perm.size()), std::vector<std::int64_t>(perm.size())};
    for (std::size_t k = 0; k < perm.size(); ++k) {
      pm.qexp[k] = m.qexp[perm[k]];
      pm.texp[k] = m.texp[perm[k]];
    }
    r.add_term(std::move(pm), c);
  }
  return r;
}

namespace {

// perm with sorted[perm[k]] == parts[k], using each sorted index once.
std::vector<int> matching_permutation(const Partition& sorted, const Partition& parts) {
  std::vector<bool> used(sorted.size(), false);
  std::vector<int> perm;
  for (int d : parts) {
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (!used[k] && sorted[k] == d) {
        used[k] = true;
        perm.push_back(static_cast<int>(k));
        break;
      }
    }
  }
  if (perm.size() != parts.size()) throw DomainError("matching_permutation: multisets differ");
  return perm;
}

Partition sorted_desc(Partition p) {
  std::sort(p.begin(), p.end(), std::greater<int>());
  return p;
}

// Merge factors [start, start + j) of a torus with parts `source` into one factor.
SplitSpec block_merge(const Partition& source, int start, int j) {
  SplitSpec s;
  s.source = source;
  s.m = source[start];
  s.j = j;
  s.target_index = start;
  for (int k = 0; k < static_cast<int>(source.size()); ++k) {
    if (k < start) {
      s.target.push_back(source[k]);
      s.spectator_map.push_back(k);
    } else if (k < start + j) {
      if (k == start) s.target.push_back(s.m * j);
      s.block.push_back(k);
      s.spectator_map.push_back(-1);
    } else {
      s.target.push_back(source[k]);
      s.spectator_map.push_back(k - j + 1);
    }
  }
  return s;
}

}  // namespace

TorusRingElem CoherentTuple::component_at(const Partition& nu) const {
  const Partition sorted = sorted_desc(nu);
  if (components_.count(sorted)) {
    return permute_factors(at(sorted), matching_permutation(sorted, nu));
  }
  const Partition assoc = associated_relevant(*params_, nu);
  TorusRingElem cur = permute_factors(at(sorted_desc(assoc)), matching_permutation(sorted_desc(assoc), assoc));
  Partition parts = assoc;
  for (int i = 0; i < static_cast<int>(nu.size()); ++i) {
    const int j = nu[i] / parts[i];
    if (j == 1) continue;
    SplitSpec s = block_merge(parts, i, j);
    Torus target(params_, s.target);
    auto res = comparison_map(cur, target, s, mode_);
    if (!res.escaped.is_zero()) throw DomainError("component_at: relevant component is not invariant");
    cur = res.image;
    parts = s.target;
  }
  return cur;
}

namespace {

struct SplitConstraint {
  SplitSpec split;
  std::string label;
};

std::vector<SplitConstraint> split_constraints(const TameParams& p, const Partition& nu) {
  std::vector<SplitConstraint> out;
  for (int i = 0; i < static_cast<int>(nu.size()); ++i) {
    if (i > 0 && nu[i] == nu[i - 1]) continue;
    for (int m : p.relevant_degrees()) {
      if (m >= nu[i] || nu[i] % m != 0) continue;
      SplitSpec s = make_split(nu, i, m);
      out.push_back({s, partition_string(s.source) + "->" + partition_string(nu) + " (part " +
                            std::to_string(nu[i]) + " from " + std::to_string(nu[i] / m) + "x" +
                            std::to_string(m) + ")"});
    }
  }
  return out;
}

// Checks one split: comparison image of the source equals the target modulo the ideal.
bool check_split(const TorusRingElem& source, const TorusRingElem& target, const SplitSpec& s,
                 const ModeConfig& mode, std::string& why) {
  const TameParams& p = target.torus().params();
  auto res = comparison_map(source, target.torus(), s, mode);
  if (!res.escaped.is_zero()) {
    why = "comparison image leaves the torus algebra: " + res.escaped.to_string();
    return false;
  }
  const std::int64_t mod = p.torsion_order(s.m);
  const TorusRingElem lhs = reduce_torsion(res.image, s.target_index, mod);
  const TorusRingElem rhs = reduce_torsion(target, s.target_index, mod);
  if (lhs != rhs) {
    why = "image " + lhs.to_string() + " differs from " + rhs.to_string();
    return false;
  }
  return true;
}

std::string symmetry_label(const Symmetry& g) {
  if (g.kind == Symmetry::Kind::swap) {
    return "swap of factors " + std::to_string(g.i + 1) + "," + std::to_string(g.j + 1);
  }
  return "Frobenius twist of factor " + std::to_string(g.i + 1);
}

}  // namespace

CoherenceCertificate is_coherent(const CoherentTuple& t) {
  CoherenceCertificate cert;
  for (const auto& [nu, x] : t.components()) {
    if (auto g = first_moving_symmetry(x)) {
      cert.coherent = false;
      cert.failure = "component " + partition_string(nu) + " is not invariant under " + symmetry_label(*g);
      return cert;
    }
    cert.verified.push_back("invariance " + partition_string(nu));
  }
  for (const auto& [nu, x] : t.components()) {
    for (const auto& c : split_constraints(t.params(), nu)) {
      std::string why;
      if (!check_split(t.at(c.split.source), x, c.split, t.mode(), why)) {
        cert.coherent = false;
        cert.failure = "split " + c.label + ": " + why;
        return cert;
      }
      cert.verified.push_back("split " + c.label);
    }
  }
  return cert;
}

CoherentTuple trace_tuple(std::shared_ptr<const TameParams> p, int n, std::int64_t e, std::int64_t f,
                          const ModeConfig& mode) {
  CoherentTuple t(std::move(p), n, mode);
  for (const auto& [nu, x] : t.components()) t.at(nu) = trace_element(x.torus(), e, f, mode);
  return t;
}

CoherentTuple unit_Q(std::shared_ptr<const TameParams> p, int n, const ModeConfig& mode, int power) {
  CoherentTuple t(std::move(p), n, mode);
  for (const auto& [nu, x] : t.components()) {
    Monomial m = x.unit_monomial();
    std::fill(m.qexp.begin(), m.qexp.end(), power);
    t.at(nu) = TorusRingElem::monomial(x.torus(), std::move(m), Cyclotomic::from_int(1));
  }
  return t;
}

std::map<int, CoherentTuple> grade(const CoherentTuple& t) {
  std::map<int, CoherentTuple> out;
  for (const auto& [nu, x] : t.components()) {
    for (const auto& [m, c] : x.terms()) {
      const int deg = weighted_degree(x.torus(), m);
      auto it = out.find(deg);
      if (it == out.end()) it = out.emplace(deg, CoherentTuple::zero(t.params_ptr(), t.n(), t.mode())).first;
      it->second.at(nu).add_term(m, c);
    }
  }
  return out;
}

std::optional<int> homogeneous_degree(const CoherentTuple& t) {
  const auto parts = grade(t);
  if (parts.size() != 1) return std::nullopt;
  return parts.begin()->first;
}

TensorTuple::TensorTuple(std::shared_ptr<const TameParams> params, Partition blocks, ModeConfig mode)
    : params_(std::move(params)), blocks_(std::move(blocks)), mode_(mode) {
  std::vector<std::vector<Partition>> choices;
  for (int b : blocks_) choices.push_back(relevant_partitions(*params_, b));
  Key key(blocks_.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == blocks_.size()) {
      components_.emplace(key, TorusRingElem(Torus(params_, concat(key))));
      return;
    }
    for (const auto& nu : choices[i]) {
      key[i] = nu;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

Partition TensorTuple::concat(const Key& key) {
  Partition out;
  for (const auto& nu : key) out.insert(out.end(), nu.begin(), nu.end());
  return out;
}

TorusRingElem& TensorTuple::at(const Key& key) {
  auto it = components_.find(key);
  if (it == components_.end()) throw DomainError("TensorTuple: unknown key");
  return it->second;
}

const TorusRingElem& TensorTuple::at(const Key& key) const {
  auto it = components_.find(key);
  if (it == components_.end()) throw DomainError("TensorTuple: unknown key");
  return it->second;
}

bool TensorTuple::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool operator==(const TensorTuple& a, const TensorTuple& b) {
  if (a.blocks_ != b.blocks_) return false;
  for (const auto& [k, x] : a.components_) {
    if (x != b.at(k)) return false;
  }
  return true;
}

TensorTuple operator*(const TensorTuple& a, const TensorTuple& b) {
  TensorTuple r = a;
  for (auto& [k, x] : r.components_) x = a.at(k) * b.at(k);
  return r;
}

TensorTuple operator+(const TensorTuple& a, const TensorTuple& b) {
  TensorTuple r = a;
  for (auto& [k, x] : r.components_) x += b.at(k);
  return r;
}

Cyclotomic TensorTuple::evaluate_at(const Key& key, const std::vector<Character>& thetas) const {
  Character all;
  for (const auto& th : thetas) {
    all.C.insert(all.C.end(), th.C.begin(), th.C.end());
    all.alpha.insert(all.alpha.end(), th.alpha.begin(), th.alpha.end());
  }
  return evaluate(at(key), all);
}

CoherenceCertificate TensorTuple::slotwise_coherent() const {
  CoherenceCertificate cert;
  for (const auto& [key, x] : components_) {
    // Slot ranges on the concatenated torus.
    std::vector<int> offset{0};
    for (const auto& nu : key) offset.push_back(offset.back() + static_cast<int>(nu.size()));
    auto slot_of = [&](int idx) {
      return static_cast<int>(std::upper_bound(offset.begin(), offset.end(), idx) - offset.begin()) - 1;
    };
    for (const auto& g : symmetry_generators(x.torus())) {
      if (g.kind == Symmetry::Kind::swap && slot_of(g.i) != slot_of(g.j)) continue;
      if (apply_symmetry(x, g) != x) {
        cert.coherent = false;
        cert.failure = "component " + partition_string(concat(key)) + " is not invariant under " + symmetry_label(g);
        return cert;
      }
    }
    for (std::size_t b = 0; b < key.size(); ++b) {
      for (const auto& c : split_constraints(*params_, key[b])) {
        Key src_key = key;
        src_key[b] = c.split.source;
        SplitSpec s;
        s.source = concat(src_key);
        s.target = concat(key);
        s.m = c.split.m;
        s.j = c.split.j;
        s.target_index = offset[b] + c.split.target_index;
        const int src_off = offset[b];
        const int shift = static_cast<int>(src_key[b].size()) - static_cast<int>(key[b].size());
        for (int k = 0; k < static_cast<int>(s.source.size()); ++k) {
          if (k < src_off) {
            s.spectator_map.push_back(k);
          } else if (k < src_off + static_cast<int>(src_key[b].size())) {
            const int local = c.split.spectator_map[k - src_off];
            s.spectator_map.push_back(local < 0 ? -1 : offset[b] + local);
            if (local < 0) s.block.push_back(k);
          } else {
            s.spectator_map.push_back(k - shift);
          }
        }
        std::string why;
        if (!check_split(at(src_key), x, s, mode_, why)) {
          cert.coherent = false;
          cert.failure = "slot " + std::to_string(b + 1) + " split " + c.label + ": " + why;
          return cert;
        }
        cert.verified.push_back("slot " + std::to_string(b + 1) + " split " + c.label);
      }
    }
  }
  return cert;
}

TensorTuple ind_nu(const CoherentTuple& t, const Partition& blocks) {
  if (partition_size(blocks) != t.n()) throw DomainError("ind_nu: blocks do not sum to n");
  TensorTuple out(t.params_ptr(), blocks, t.mode());
  for (const auto& [key, x] : out.components()) {
    out.at(key) = t.component_at(TensorTuple::concat(key));
  }
  return out;
}

TensorTuple tensor_product(const std::vector<CoherentTuple>& factors) {
  if (factors.empty()) throw DomainError("tensor_product: no factors");
  Partition blocks;
  for (const auto& f : factors) blocks.push_back(f.n());
  TensorTuple out(factors.front().params_ptr(), blocks, factors.front().mode());
  for (const auto& [key, x] : out.components()) {
    TorusRingElem acc = TorusRingElem::constant(x.torus(), Cyclotomic::from_int(1));
    int offset = 0;
    for (std::size_t b = 0; b < factors.size(); ++b) {
      const TorusRingElem& y = factors[b].at(key[b]);
      TorusRingElem lifted(x.torus());
      for (const auto& [m, c] : y.terms()) {
        Monomial big = x.unit_monomial();
        for (std::size_t k = 0; k < m.qexp.size(); ++k) {
          big.qexp[offset + k] = m.qexp[k];
          big.texp[offset + k] = m.texp[k];
        }
        lifted.add_term(std::move(big), c);
      }
      acc = acc * lifted;
      offset += static_cast<int>(key[b].size());
    }
    out.at(key) = acc;
  }
  return out;
}

}  // namespace curtis
