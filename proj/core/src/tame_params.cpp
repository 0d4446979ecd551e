#include <algorithm>
#include <sstream>

#include "curtis/errors.hpp"
#include "curtis/numtheory.hpp"
#include "curtis/tame.hpp"

namespace curtis {

namespace {

int valuation_of_power_minus_one(std::int64_t q, int d, std::int64_t ell) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(d));
  v -= 1;
  return static_cast<int>(mpz_remove(v.get_mpz_t(), v.get_mpz_t(), mpz_class(ell).get_mpz_t()));
}

}  // namespace

ModeConfig ModeConfig::parse(const std::string& s) {
  if (s == "rectified") return ModeConfig{Mode::rectified};
  if (s == "plain") return ModeConfig{Mode::plain};
  throw DomainError("unknown mode '" + s + "' (expected rectified or plain)");
}

TameParams::TameParams(std::int64_t ell, std::int64_t q, int n_max) : ell_(ell), q_(q), n_max_(n_max) {
  if (!nt::is_prime(ell)) throw DomainError("ell must be prime");
  if (nt::prime_power_base(q) == 0) throw DomainError("q must be a prime power");
  if (std::gcd(q, ell) != 1) throw DomainError("q and ell must be coprime");
  if (n_max < 1) throw DomainError("n must be positive");
  e_q_ = nt::mult_order(q, ell);
  a_table_.assign(static_cast<std::size_t>(n_max) + 1, 0);
  A_ = 0;
  for (int d = 1; d <= n_max; ++d) {
    a_table_[d] = valuation_of_power_minus_one(q, d, ell);
    A_ = std::max(A_, a_table_[d]);
  }
  if (A_ > 40) throw GuardError("ell-adic valuation too large");
  L_ = nt::ipow(ell, A_);
  if (L_ > 1000000) throw GuardError("ell^A exceeds 10^6");
}

int TameParams::a(int d) const {
  if (d < 1) throw DomainError("a(d): degree must be positive");
  if (d <= n_max_) return a_table_[d];
  return valuation_of_power_minus_one(q_, d, ell_);
}

std::int64_t TameParams::torsion_order(int d) const {
  const int ad = a(d);
  if (ad > A_) throw DomainError("degree exceeds the configured n_max");
  return nt::ipow(ell_, ad);
}

bool TameParams::is_relevant_degree(std::int64_t d) const {
  if (d == 1) return true;
  if (d < 1 || d % e_q_ != 0) return false;
  std::int64_t r = d / e_q_;
  while (r % ell_ == 0) r /= ell_;
  return r == 1;
}

std::vector<int> TameParams::relevant_degrees() const {
  std::vector<int> out;
  for (int d = 1; d <= n_max_; ++d) {
    if (is_relevant_degree(d)) out.push_back(d);
  }
  return out;
}

int TameParams::largest_relevant_divisor(int d) const {
  for (int k = d; k >= 1; --k) {
    if (d % k == 0 && is_relevant_degree(k)) return k;
  }
  return 1;
}

std::vector<std::int64_t> orbit_elements(const TameParams& p, std::int64_t C) {
  const std::int64_t L = p.L();
  const std::int64_t start = nt::mod(C, L);
  std::vector<std::int64_t> out{start};
  std::int64_t x = nt::mulmod(start, p.q(), L);
  while (x != start) {
    out.push_back(x);
    x = nt::mulmod(x, p.q(), L);
  }
  return out;
}

InertiaOrbit orbit_of(const TameParams& p, std::int64_t C) {
  const auto elems = orbit_elements(p, C);
  return InertiaOrbit{*std::min_element(elems.begin(), elems.end()), static_cast<int>(elems.size())};
}

SSRep::SSRep(std::vector<IrrRep> pieces) : pieces_(std::move(pieces)) {
  for (const auto& r : pieces_) dim_ += r.dim();
  sort_pieces();
}

void SSRep::add(const IrrRep& r) {
  pieces_.push_back(r);
  dim_ += r.dim();
  sort_pieces();
}

SSRep SSRep::direct_sum(const SSRep& other) const {
  std::vector<IrrRep> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return SSRep(std::move(all));
}

void SSRep::sort_pieces() {
  std::stable_sort(pieces_.begin(), pieces_.end(), [](const IrrRep& a, const IrrRep& b) {
    if (a.orbit != b.orbit) return a.orbit < b.orbit;
    const auto ra = a.phi.as_root_of_unity();
    const auto rb = b.phi.as_root_of_unity();
    if (ra && rb) {
      // Compare as fractions exponent/order in [0, 1).
      return ra->exponent * rb->order < rb->exponent * ra->order;
    }
    if (ra || rb) return static_cast<bool>(ra);
    return a.phi.to_string() < b.phi.to_string();
  });
}

std::string SSRep::canonical_key(std::int64_t K) const {
  std::vector<std::string> parts;
  for (const auto& r : pieces_) {
    std::ostringstream out;
    out << r.orbit.rep << ":" << r.orbit.size << ":";
    for (const auto& c : r.phi.coordinates(K)) out << c.get_str() << ",";
    parts.push_back(out.str());
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& s : parts) key += s + ";";
  return key;
}

std::string SSRep::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out << ", ";
    const auto& r = pieces_[i];
    out << "(c=" << r.orbit.rep << ",m=" << r.orbit.size << ",phi=";
    if (auto root = r.phi.as_root_of_unity()) {
      out << "zeta_" << root->order << "^" << root->exponent;
    } else {
      out << r.phi.to_string();
    }
    out << ")";
  }
  out << "}";
  return out.str();
}

bool operator==(const SSRep& a, const SSRep& b) {
  if (a.dim_ != b.dim_ || a.pieces_.size() != b.pieces_.size()) return false;
  std::vector<bool> used(b.pieces_.size(), false);
  for (const auto& r : a.pieces_) {
    bool found = false;
    for (std::size_t i = 0; i < b.pieces_.size(); ++i) {
      if (!used[i] && b.pieces_[i] == r) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace curtis
