#include <algorithm>
#include <functional>
#include <map>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/torus.hpp"

namespace curtis {

SplitSpec make_split(const Partition& target, int target_index, int m) {
  const int n0 = target.at(target_index);
  if (m < 1 || n0 % m != 0 || m == n0) throw DomainError("make_split: m must be a proper divisor of the part");
  SplitSpec s;
  s.target = target;
  s.target_index = target_index;
  s.m = m;
  s.j = n0 / m;
  for (int i = 0; i < static_cast<int>(target.size()); ++i) {
    if (i != target_index) s.source.push_back(target[i]);
  }
  for (int k = 0; k < s.j; ++k) s.source.push_back(m);
  std::sort(s.source.begin(), s.source.end(), std::greater<int>());

  std::vector<bool> used(s.source.size(), false);
  s.spectator_map.assign(s.source.size(), -1);
  for (int i = 0; i < static_cast<int>(target.size()); ++i) {
    if (i == target_index) continue;
    for (std::size_t k = 0; k < s.source.size(); ++k) {
      if (!used[k] && s.source[k] == target[i]) {
        used[k] = true;
        s.spectator_map[k] = i;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < s.source.size(); ++k) {
    if (!used[k]) s.block.push_back(static_cast<int>(k));
  }
  return s;
}

ComparisonResult comparison_map(const TorusRingElem& x, const Torus& target, const SplitSpec& split,
                                const ModeConfig& mode) {
  if (x.torus().parts() != split.source || target.parts() != split.target) {
    throw DomainError("comparison_map: tori do not match the split");
  }
  const int j = split.j;
  const int d = split.m * j;
  const TameParams& p = target.params();
  const std::int64_t reduced = p.torsion_order(split.m);
  // Qhat^j = s Q with s = s(m)^j s(d).
  const int s = ((j % 2 == 1) ? mode.sign(split.m) : 1) * mode.sign(d);
  const Cyclotomic s_value = Cyclotomic::from_int(s);

  ComparisonResult out{TorusRingElem(target), TorusRingElem(target)};
  for (const auto& [m, c] : x.terms()) {
    Monomial img{std::vector<int>(target.rank(), 0), std::vector<std::int64_t>(target.rank(), 0)};
    for (std::size_t k = 0; k < split.spectator_map.size(); ++k) {
      const int t = split.spectator_map[k];
      if (t < 0) continue;
      img.qexp[t] = m.qexp[k];
      img.texp[t] = m.texp[k];
    }
    long total = 0;
    long phase = 0;
    std::int64_t torsion = 0;
    for (int k = 0; k < j; ++k) {
      const int src = split.block[k];
      total += m.qexp[src];
      phase += static_cast<long>(k + 1) * m.qexp[src];
      torsion += m.texp[src];
    }
    img.texp[split.target_index] = nt::mod(torsion, reduced);
    Cyclotomic coeff = j > 1 ? c.times_zeta(j, nt::mod(phase, j)) : c;
    if (total % j == 0) {
      const long k = total / j;
      img.qexp[split.target_index] = static_cast<int>(k);
      if (k % 2 != 0) coeff *= s_value;
      out.image.add_term(std::move(img), coeff);
    } else {
      img.qexp[split.target_index] = static_cast<int>(total);
      out.escaped.add_term(std::move(img), coeff);
    }
  }
  return out;
}

}  // namespace curtis
