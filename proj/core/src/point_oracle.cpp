#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "curtis/coherent.hpp"
#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

std::vector<Character> enumerate_characters(const Torus& torus, std::int64_t N) {
  const TameParams& p = torus.params();
  std::vector<Character> out;
  Character cur;
  cur.C.resize(torus.rank());
  cur.alpha.resize(torus.rank());
  std::vector<Cyclotomic> values;
  for (std::int64_t k = 0; k < N; ++k) values.push_back(Cyclotomic::zeta(N, k));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == torus.rank()) {
      out.push_back(cur);
      return;
    }
    const std::int64_t scale = p.scale(torus.part(i));
    for (std::int64_t c = 0; c < torus.torsion_order(i); ++c) {
      cur.C[i] = c * scale;
      for (const auto& v : values) {
        cur.alpha[i] = v;
        self(self, i + 1);
      }
    }
  };
  rec(rec, 0);
  return out;
}

std::pair<Partition, Character> minimal_realization(const TameParams& p, const SSRep& rho, const ModeConfig& mode) {
  (void)p;
  std::vector<IrrRep> pieces = rho.pieces();
  std::stable_sort(pieces.begin(), pieces.end(), [](const IrrRep& a, const IrrRep& b) { return a.dim() > b.dim(); });
  Partition parts;
  Character theta;
  for (const auto& r : pieces) {
    parts.push_back(r.dim());
    theta.C.push_back(r.orbit.rep);
    theta.alpha.push_back(r.phi * Cyclotomic::from_int(mode.sign(r.dim())));
  }
  return {parts, theta};
}

std::optional<std::pair<Partition, Character>> split_character(const Torus& torus, const Character& theta, int i,
                                                               int m, const ModeConfig& mode) {
  const TameParams& p = torus.params();
  const int d = torus.part(i);
  if (m >= d || d % m != 0) return std::nullopt;
  const std::int64_t L = p.L();
  if (nt::mod(theta.C[i] * (nt::powmod(p.q(), m, L) - 1), L) != 0) return std::nullopt;
  const int j = d / m;
  const Cyclotomic target = theta.alpha[i] * Cyclotomic::from_int(mode.sign(d));
  const auto root = target.as_root_of_unity();
  if (!root) return std::nullopt;
  const Cyclotomic r = kth_roots(target, j, j * root->order).front();
  Partition parts;
  Character out;
  for (int k = 0; k < torus.rank(); ++k) {
    if (k != i) {
      parts.push_back(torus.part(k));
      out.C.push_back(theta.C[k]);
      out.alpha.push_back(theta.alpha[k]);
      continue;
    }
    for (int t = 1; t <= j; ++t) {
      parts.push_back(m);
      out.C.push_back(theta.C[i]);
      out.alpha.push_back(r.times_zeta(j, t) * Cyclotomic::from_int(mode.sign(m)));
    }
  }
  return std::make_pair(parts, out);
}

namespace {

std::string rep_key(const SSRep& rho) {
  std::vector<std::string> parts;
  for (const auto& r : rho.pieces()) {
    std::ostringstream out;
    out << r.orbit.rep << ":" << r.orbit.size << ":";
    if (auto root = r.phi.as_root_of_unity()) {
      out << root->exponent << "/" << root->order;
    } else {
      for (const auto& c : r.phi.minimize().numerator()) out << c.get_str() << ",";
      out << "@" << r.phi.minimize().conductor() << "/" << r.phi.denominator().get_str();
    }
    parts.push_back(out.str());
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& s : parts) key += s + ";";
  return key;
}

std::string describe(const Partition& nu, const Character& theta) {
  std::ostringstream out;
  out << partition_string(nu) << " theta=(";
  for (std::size_t i = 0; i < theta.C.size(); ++i) {
    if (i) out << ", ";
    out << "C=" << theta.C[i] << " alpha=";
    if (auto r = theta.alpha[i].as_root_of_unity()) out << "zeta_" << r->order << "^" << r->exponent;
    else out << theta.alpha[i].to_string();
  }
  out << ")";
  return out.str();
}

struct Seen {
  Cyclotomic value;
  std::string where;
};

}  // namespace

OracleReport coherence_point_oracle(const CoherentTuple& t, std::size_t samples, std::int64_t N,
                                    std::uint64_t seed, std::size_t exhaustive_limit) {
  OracleReport report;
  const TameParams& p = t.params();
  const auto partitions = relevant_partitions(p, t.n());

  double total = 0;
  for (const auto& nu : partitions) {
    double c = 1;
    Torus torus(t.params_ptr(), nu);
    for (int i = 0; i < torus.rank(); ++i) c *= static_cast<double>(torus.torsion_order(i) * N);
    total += c;
  }

  if (total <= static_cast<double>(exhaustive_limit)) {
    report.exhaustive = true;
    std::unordered_map<std::string, Seen> buckets;
    for (const auto& nu : partitions) {
      const TorusRingElem& x = t.at(nu);
      for (const auto& theta : enumerate_characters(x.torus(), N)) {
        const std::string key = rep_key(rho_of(x.torus(), theta, t.mode()));
        Cyclotomic v = evaluate(x, theta);
        ++report.points;
        auto it = buckets.find(key);
        if (it == buckets.end()) {
          buckets.emplace(key, Seen{std::move(v), describe(nu, theta)});
        } else if (it->second.value != v) {
          report.coherent = false;
          report.witness = it->second.where + " -> " + it->second.value.to_string() + " vs " + describe(nu, theta) +
                           " -> " + v.to_string();
          return report;
        }
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t n) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)); };
  for (std::size_t s = 0; s < samples; ++s) {
    const Partition& nu = partitions[uniform(static_cast<std::int64_t>(partitions.size()))];
    Torus torus(t.params_ptr(), nu);
    Character theta;
    for (int i = 0; i < torus.rank(); ++i) {
      // Bias toward small inertia orders, where the constraints bite.
      const int level = static_cast<int>(uniform(p.a(nu[i]) + 1));
      const std::int64_t step = p.L() / nt::ipow(p.ell(), level);
      theta.C.push_back(uniform(nt::ipow(p.ell(), level)) * step);
      theta.alpha.push_back(Cyclotomic::zeta(N, uniform(N)));
    }
    const SSRep rho = rho_of(torus, theta, t.mode());
    const Cyclotomic v0 = evaluate(t.at(nu), theta);
    const std::string here = describe(nu, theta);

    std::vector<std::pair<Partition, Character>> others;
    others.push_back(minimal_realization(p, rho, t.mode()));
    for (const auto& g : symmetry_generators(torus)) others.emplace_back(nu, transport_character(torus, theta, g));
    for (int i = 0; i < torus.rank(); ++i) {
      for (int m : p.relevant_degrees()) {
        if (auto sp = split_character(torus, theta, i, m, t.mode())) others.push_back(*sp);
      }
    }
    for (const auto& [parts, th] : others) {
      Torus other(t.params_ptr(), parts);
      if (!(rho_of(other, th, t.mode()) == rho)) throw std::logic_error("coherence_point_oracle: unmatched realization");
      const Cyclotomic v = evaluate(t.component_at(parts), th);
      ++report.points;
      if (v != v0) {
        report.coherent = false;
        report.witness = here + " -> " + v0.to_string() + " vs " + describe(parts, th) + " -> " + v.to_string();
        return report;
      }
    }
  }
  return report;
}

}  // namespace curtis
