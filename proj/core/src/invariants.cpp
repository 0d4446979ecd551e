#include <algorithm>
#include <cctype>
#include <sstream>

#include "curtis/errors.hpp"
#include "curtis/frob.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

Word Word::parse(const std::string& text) {
  Word w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
    const std::string name = text.substr(i, j - i);
    char letter = 0;
    if (name == "s" || name == "sigma") letter = 's';
    if (name == "f" || name == "F" || name == "Fr") letter = 'f';
    if (letter == 0) throw DomainError("word: unknown letter '" + name + "' in \"" + text + "\"");
    i = j;
    int e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t used = 0;
      try {
        e = std::stoi(text.substr(i), &used);
      } catch (const std::exception&) {
        throw DomainError("word: bad exponent in \"" + text + "\"");
      }
      i += used;
    }
    if (e != 0) {
      if (!w.letters.empty() && w.letters.back().first == letter) {
        w.letters.back().second += e;
        if (w.letters.back().second == 0) w.letters.pop_back();
      } else {
        w.letters.emplace_back(letter, e);
      }
    }
    skip();
  }
  return w;
}

Word Word::sf(int e, int f) {
  Word w;
  if (e != 0) w.letters.emplace_back('s', e);
  if (f != 0) w.letters.emplace_back('f', f);
  return w;
}

std::string Word::to_string() const {
  if (letters.empty()) return "1";
  std::string s;
  for (const auto& [c, e] : letters) {
    if (!s.empty()) s += " ";
    s += c;
    s += "^" + std::to_string(e);
  }
  return s;
}

InvariantFn InvariantFn::trace(const Word& w) {
  InvariantFn out;
  out.add({Atom{false, w}}, 1);
  return out;
}

InvariantFn InvariantFn::det_fr(int k) {
  InvariantFn out;
  if (k == 0) {
    out.add({}, 1);
  } else {
    Word w;
    w.letters.emplace_back('f', k);
    out.add({Atom{true, w}}, 1);
  }
  return out;
}

InvariantFn InvariantFn::constant(long c) {
  InvariantFn out;
  out.add({}, c);
  return out;
}

void InvariantFn::add(std::vector<Atom> atoms, long c) {
  if (c == 0) return;
  std::sort(atoms.begin(), atoms.end());
  auto& slot = terms_[atoms];
  slot += c;
  if (slot == 0) terms_.erase(atoms);
}

InvariantFn operator+(const InvariantFn& a, const InvariantFn& b) {
  InvariantFn out = a;
  for (const auto& [atoms, c] : b.terms_) out.add(atoms, c);
  return out;
}

InvariantFn operator*(const InvariantFn& a, const InvariantFn& b) {
  InvariantFn out;
  for (const auto& [x, c] : a.terms_) {
    for (const auto& [y, d] : b.terms_) {
      std::vector<InvariantFn::Atom> atoms = x;
      atoms.insert(atoms.end(), y.begin(), y.end());
      out.add(std::move(atoms), c * d);
    }
  }
  return out;
}

InvariantFn InvariantFn::scaled(long c) const {
  InvariantFn out;
  for (const auto& [atoms, d] : terms_) out.add(atoms, c * d);
  return out;
}

std::string InvariantFn::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (const auto& [atoms, c] : terms_) {
    s << (first ? "" : " + ") << c;
    first = false;
    for (const auto& a : atoms) {
      if (a.is_det) {
        s << "*det(Fr)^" << a.word.letters.front().second;
      } else {
        s << "*tr(" << a.word.to_string() << ")";
      }
    }
  }
  return s.str();
}

namespace {

// Cycle structure of w: consecutive blocks of sizes nu_i.
struct Cycles {
  std::vector<int> cycle_of;
  std::vector<int> start;
  std::vector<int> size;
};

Cycles cycles_of(const Partition& nu) {
  Cycles c;
  int pos = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    c.start.push_back(pos);
    c.size.push_back(nu[i]);
    for (int k = 0; k < nu[i]; ++k) c.cycle_of.push_back(static_cast<int>(i));
    pos += nu[i];
  }
  return c;
}

// Laurent monomial in the coordinates f_j and z_j of X^w.
struct SymEntry {
  std::vector<int> fexp;
  std::vector<int> zexp;
};

// Monomial matrix: column j goes to row img[j] with entry ent[j].
struct MonoMat {
  std::vector<int> img;
  std::vector<SymEntry> ent;
};

MonoMat identity_mono(int n) {
  MonoMat m;
  for (int j = 0; j < n; ++j) {
    m.img.push_back(j);
    m.ent.push_back(SymEntry{std::vector<int>(n, 0), std::vector<int>(n, 0)});
  }
  return m;
}

MonoMat compose(const MonoMat& a, const MonoMat& b) {
  MonoMat out = b;
  for (std::size_t j = 0; j < b.img.size(); ++j) {
    const int mid = b.img[j];
    out.img[j] = a.img[mid];
    for (std::size_t k = 0; k < out.ent[j].fexp.size(); ++k) {
      out.ent[j].fexp[k] += a.ent[mid].fexp[k];
      out.ent[j].zexp[k] += a.ent[mid].zexp[k];
    }
  }
  return out;
}

// Fr e_j = f_j e_{pi^-1(j)}, Fr^-1 e_i = f_{pi(i)}^-1 e_{pi(i)}, sigma e_j = z_j e_j.
MonoMat letter_mono(const Cycles& cyc, char letter, int sign) {
  const int n = static_cast<int>(cyc.cycle_of.size());
  MonoMat m = identity_mono(n);
  for (int j = 0; j < n; ++j) {
    const int c = cyc.cycle_of[j];
    const int s = cyc.start[c];
    const int d = cyc.size[c];
    if (letter == 's') {
      m.ent[j].zexp[j] = sign;
    } else if (sign > 0) {
      m.img[j] = s + static_cast<int>(nt::mod(j - s - 1, d));
      m.ent[j].fexp[j] = 1;
    } else {
      const int up = s + static_cast<int>(nt::mod(j - s + 1, d));
      m.img[j] = up;
      m.ent[j].fexp[up] = -1;
    }
  }
  return m;
}

MonoMat word_mono(const Cycles& cyc, const Word& w) {
  MonoMat out = identity_mono(static_cast<int>(cyc.cycle_of.size()));
  for (const auto& [c, e] : w.letters) {
    const MonoMat step = letter_mono(cyc, c, e > 0 ? 1 : -1);
    for (int k = 0; k < std::abs(e); ++k) out = compose(out, step);
  }
  return out;
}

TorusRingElem restrict_trace(const Torus& torus, const Cycles& cyc, const Word& w, const ModeConfig& mode) {
  const MonoMat m = word_mono(cyc, w);
  const std::int64_t q = torus.params().q();
  TorusRingElem x(torus);
  for (std::size_t j = 0; j < m.img.size(); ++j) {
    if (m.img[j] != static_cast<int>(j)) continue;
    const int c = cyc.cycle_of[j];
    const int s = cyc.start[c];
    const int d = cyc.size[c];
    const SymEntry& e = m.ent[j];
    const int k = e.fexp[s];
    Monomial mono = x.unit_monomial();
    const std::int64_t t = torus.torsion_order(c);
    std::int64_t texp = 0;
    for (int pos = 0; pos < d; ++pos) {
      if (e.fexp[s + pos] != k) throw std::logic_error("restriction: trace word is not torus-invariant");
      texp = nt::mod(texp + nt::mulmod(nt::mod(e.zexp[s + pos], t), nt::powmod(q, pos, t), t), t);
    }
    mono.qexp[c] = k;
    mono.texp[c] = texp;
    const long sign = (mode.sign(d) == -1 && k % 2 != 0) ? -1 : 1;
    x.add_term(std::move(mono), Cyclotomic::from_int(sign));
  }
  return x;
}

// det Fr = sign(w) prod f_j, and the f-product of a degree-d cycle is s(d) Q.
TorusRingElem restrict_det(const Torus& torus, int k, const ModeConfig& mode) {
  TorusRingElem x(torus);
  Monomial mono = x.unit_monomial();
  long sign = 1;
  for (int c = 0; c < torus.rank(); ++c) {
    const int d = torus.part(c);
    mono.qexp[c] = k;
    if ((d - 1) % 2 != 0 && k % 2 != 0) sign = -sign;
    if (mode.sign(d) == -1 && k % 2 != 0) sign = -sign;
  }
  x.add_term(std::move(mono), Cyclotomic::from_int(sign));
  return x;
}

}  // namespace

TorusRingElem restrict_invariant_to_Xw(const InvariantFn& inv, const Torus& torus, const ModeConfig& mode) {
  const Cycles cyc = cycles_of(torus.parts());
  TorusRingElem total(torus);
  for (const auto& [atoms, c] : inv.terms()) {
    TorusRingElem term = TorusRingElem::constant(torus, Cyclotomic::from_int(c));
    for (const auto& a : atoms) {
      term = term * (a.is_det ? restrict_det(torus, a.word.letters.front().second, mode)
                              : restrict_trace(torus, cyc, a.word, mode));
    }
    total += term;
  }
  return total;
}

CycPoint xw_point(const Torus& torus, const Character& theta, const ModeConfig& mode) {
  if (!is_valid_character(torus, theta)) throw DomainError("xw_point: character is not valid on the torus");
  const Cycles cyc = cycles_of(torus.parts());
  const int n = static_cast<int>(cyc.cycle_of.size());
  const TameParams& params = torus.params();
  const std::int64_t L = params.L();
  const Cyclotomic zero(1);
  Mat<Cyclotomic> Fr(n, n, zero);
  Mat<Cyclotomic> sigma(n, n, zero);
  for (int j = 0; j < n; ++j) {
    const int c = cyc.cycle_of[j];
    const int s = cyc.start[c];
    const int d = cyc.size[c];
    const int pos = j - s;
    const Cyclotomic f = pos == 0 ? theta.alpha[c] * Cyclotomic::from_int(mode.sign(d)) : Cyclotomic::from_int(1);
    Fr(s + static_cast<int>(nt::mod(pos - 1, d)), j) = f;
    sigma(j, j) = Cyclotomic::zeta(L, nt::mulmod(nt::mod(theta.C[c], L), nt::powmod(params.q(), pos, L), L));
  }
  return CycPoint{Fr, sigma};
}

CoherentTuple invariant_to_A(const InvariantFn& inv, std::shared_ptr<const TameParams> p, int n,
                             const ModeConfig& mode) {
  CoherentTuple t(std::move(p), n, mode);
  for (const auto& [nu, x] : t.components()) t.at(nu) = restrict_invariant_to_Xw(inv, x.torus(), mode);
  return t;
}

}  // namespace curtis
