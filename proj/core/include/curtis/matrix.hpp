#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtis/cyclotomic.hpp"
#include "curtis/numtheory.hpp"

namespace curtis {

/// Element of the prime field F_r.
struct ModP {
  std::int64_t v = 0;
  std::int64_t r = 2;

  ModP() = default;
  ModP(std::int64_t value, std::int64_t modulus) : v(nt::mod(value, modulus)), r(modulus) {}

  friend ModP operator+(ModP a, ModP b) { return ModP(a.v + b.v, a.r); }
  friend ModP operator-(ModP a, ModP b) { return ModP(a.v - b.v, a.r); }
  friend ModP operator*(ModP a, ModP b) { return ModP(nt::mulmod(a.v, b.v, a.r), a.r); }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP operator-() const { return ModP(-v, r); }
  ModP inverse() const {
    if (v == 0) throw std::domain_error("ModP: division by zero");
    return ModP(nt::powmod(v, r - 2, r), r);
  }
  friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
  friend bool operator!=(ModP a, ModP b) { return a.v != b.v; }
};

inline bool is_zero(const ModP& x) { return x.v == 0; }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline ModP scalar_like(const ModP& z, long value) { return ModP(value, z.r); }
inline Cyclotomic scalar_like(const Cyclotomic&, long value) { return Cyclotomic::from_int(value); }
inline std::string to_string(const ModP& x) { return std::to_string(x.v); }
inline std::string to_string(const Cyclotomic& x) { return x.to_string(); }

/// Dense matrix over a field T (ModP or Cyclotomic). Carries a zero for its base.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, T zero) : rows_(rows), cols_(cols), data_(rows * cols, zero), zero_(zero) {}

  static Mat identity(std::size_t n, const T& zero) {
    Mat m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_like(zero, 1);
    return m;
  }
  static Mat diagonal(const std::vector<T>& d, const T& zero) {
    Mat m(d.size(), d.size(), zero);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const T& zero() const { return zero_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch");
    Mat out(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    }
    return out;
  }
  friend Mat operator+(Mat a, const Mat& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = a.data_[i] + b.data_[i];
    return a;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = a.data_[i] - b.data_[i];
    return a;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      if (a.data_[i] != b.data_[i]) return false;
    }
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero_matrix() const {
    for (const auto& x : data_) {
      if (!is_zero(x)) return false;
    }
    return true;
  }

  T trace() const {
    T t = zero_;
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  T determinant() const {
    Mat a = *this;
    T det = scalar_like(zero_, 1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && is_zero(a(p, c))) ++p;
      if (p == rows_) return zero_;
      if (p != c) {
        a.swap_rows(p, c);
        det = -det;
      }
      det = det * a(c, c);
      const T inv = scalar_like(zero_, 1) / a(c, c);
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (is_zero(a(r, c))) continue;
        const T f = a(r, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) a(r, j) = a(r, j) - f * a(c, j);
      }
    }
    return det;
  }

  std::optional<Mat> inverse() const {
    const std::size_t n = rows_;
    Mat a = *this;
    Mat inv = identity(n, zero_);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && is_zero(a(p, c))) ++p;
      if (p == n) return std::nullopt;
      a.swap_rows(p, c);
      inv.swap_rows(p, c);
      const T s = scalar_like(zero_, 1) / a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) = a(c, j) * s;
        inv(c, j) = inv(c, j) * s;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || is_zero(a(r, c))) continue;
        const T f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) = a(r, j) - f * a(c, j);
          inv(r, j) = inv(r, j) - f * inv(c, j);
        }
      }
    }
    return inv;
  }

  Mat pow(std::int64_t k) const {
    Mat base = *this;
    if (k < 0) {
      auto inv = inverse();
      if (!inv) throw std::domain_error("Mat::pow: singular matrix");
      base = *inv;
      k = -k;
    }
    Mat out = identity(rows_, zero_);
    while (k > 0) {
      if (k & 1) out = out * base;
      base = base * base;
      k >>= 1;
    }
    return out;
  }

  Mat scaled(const T& s) const {
    Mat out = *this;
    for (auto& x : out.data_) x = x * s;
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + curtis::to_string((*this)(i, j));
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
  T zero_{};
};

/// Row reduction in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Mat<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, row);
    const T s = scalar_like(a.zero(), 1) / a(row, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * s;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, c))) continue;
      const T f = a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) - f * a(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Mat<T> a) {
  return rref(a).size();
}

/// Basis of {x : A x = 0}; vector i is 1 at free column i and 0 at the other free columns.
template <class T>
std::vector<std::vector<T>> kernel(Mat<T> a, std::vector<std::size_t>* free_cols = nullptr) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    if (free_cols) free_cols->push_back(f);
    std::vector<T> v(a.cols(), a.zero());
    v[f] = scalar_like(a.zero(), 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Matrix whose columns are the given vectors.
template <class T>
Mat<T> from_columns(const std::vector<std::vector<T>>& cols, std::size_t n, const T& zero) {
  Mat<T> m(n, cols.size(), zero);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

/// Characteristic polynomial det(xI - A), coefficients lowest degree first (monic).
template <class T>
std::vector<T> char_poly(const Mat<T>& a) {
  const std::size_t n = a.rows();
  std::vector<T> coeffs(n + 1, a.zero());
  coeffs[n] = scalar_like(a.zero(), 1);
  // Sum of principal minors of each size.
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) idx.push_back(i);
    }
    Mat<T> sub(idx.size(), idx.size(), a.zero());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
    }
    const T minor = sub.determinant();
    const std::size_t k = idx.size();
    coeffs[n - k] = coeffs[n - k] + (k % 2 == 0 ? minor : -minor);
  }
  return coeffs;
}

template <class T>
Mat<T> block_diagonal(const std::vector<Mat<T>>& blocks, const T& zero) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat<T> out(n, n, zero);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    }
    off += b.rows();
  }
  return out;
}

}  // namespace curtis
