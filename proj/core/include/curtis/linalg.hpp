#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace curtis {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using SparseRow = std::map<std::size_t, Rational>;

/// Incremental reduced row echelon form over Q.
///
/// Rows are inserted one at a time and reduced against the current pivots, so
/// systems with many redundant constraints never materialize a dense matrix.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  /// Returns true if the row was independent of the rows seen so far.
  bool add_row(SparseRow row);
  bool add_row(const RationalVector& row);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }

  /// Basis of {x : Ax = 0} for the rows inserted so far.
  std::vector<RationalVector> nullspace() const;

  /// Reduces v against the pivot rows; zero result means v lies in the row space.
  SparseRow reduce(SparseRow v) const;

 private:
  std::size_t cols_;
  // pivot column -> normalized row (pivot entry 1)
  std::map<std::size_t, SparseRow> pivots_;
};

/// Dense matrix helpers used for small field computations.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rank() const;
  Rational determinant() const;
  /// Unique solution of A x = b for square invertible A.
  std::optional<RationalVector> solve(const RationalVector& b) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank of a family of vectors (all of equal length).
std::size_t rank_of(const std::vector<RationalVector>& vectors);

}  // namespace curtis
