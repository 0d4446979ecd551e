#include "curtis/linalg.hpp"

#include <stdexcept>

namespace curtis {

namespace {

void axpy(SparseRow& target, const Rational& factor, const SparseRow& row) {
  for (const auto& [col, value] : row) {
    auto it = target.find(col);
    if (it == target.end()) {
      target.emplace(col, -factor * value);
    } else {
      it->second -= factor * value;
      if (it->second == 0) target.erase(it);
    }
  }
}

}  // namespace

SparseRow RowEchelon::reduce(SparseRow v) const {
  // Pivot rows are fully reduced, so one left-to-right sweep suffices.
  for (auto it = v.begin(); it != v.end();) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    Rational factor = it->second;
    axpy(v, factor, piv->second);
    it = v.upper_bound(col);
  }
  return v;
}

bool RowEchelon::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0) it = row.erase(it); else ++it;
  }
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const std::size_t pivot_col = row.begin()->first;
  const Rational lead = row.begin()->second;
  for (auto& [col, value] : row) value /= lead;
  for (auto& [col, other] : pivots_) {
    auto hit = other.find(pivot_col);
    if (hit != other.end()) {
      Rational factor = hit->second;
      axpy(other, factor, row);
    }
  }
  pivots_.emplace(pivot_col, std::move(row));
  return true;
}

bool RowEchelon::add_row(const RationalVector& row) {
  if (row.size() != cols_) throw std::invalid_argument("RowEchelon: row length mismatch");
  SparseRow sparse;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0) sparse.emplace(i, row[i]);
  }
  return add_row(std::move(sparse));
}

std::vector<RationalVector> RowEchelon::nullspace() const {
  std::vector<RationalVector> basis;
  for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
    if (pivots_.count(free_col)) continue;
    RationalVector v(cols_);
    v[free_col] = 1;
    for (const auto& [pcol, row] : pivots_) {
      auto hit = row.find(free_col);
      if (hit != row.end()) v[pcol] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t RationalMatrix::rank() const {
  RowEchelon ech(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    SparseRow row;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != 0) row.emplace(c, (*this)(r, c));
    }
    ech.add_row(std::move(row));
  }
  return ech.rank();
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<Rational> m = data_;
  const std::size_t n = rows_;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p * n + c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[p * n + k], m[c * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r * n + c] == 0) continue;
      Rational f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

std::optional<RationalVector> RationalMatrix::solve(const RationalVector& b) const {
  if (rows_ != cols_ || b.size() != rows_) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = rows_;
  std::vector<Rational> m(n * (n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r * (n + 1) + c] = (*this)(r, c);
    m[r * (n + 1) + n] = b[r];
  }
  const std::size_t w = n + 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p * w + c] == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t k = 0; k < w; ++k) std::swap(m[p * w + k], m[c * w + k]);
    }
    Rational inv = 1 / m[c * w + c];
    for (std::size_t k = c; k < w; ++k) m[c * w + k] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r * w + c] == 0) continue;
      Rational f = m[r * w + c];
      for (std::size_t k = c; k < w; ++k) m[r * w + k] -= f * m[c * w + k];
    }
  }
  RationalVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = m[r * w + n];
  return x;
}

std::size_t rank_of(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  RowEchelon ech(vectors.front().size());
  for (const auto& v : vectors) ech.add_row(v);
  return ech.rank();
}

}  // namespace curtis
