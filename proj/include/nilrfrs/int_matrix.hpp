#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nilrfrs/integer.hpp"

namespace nilrfrs {

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Rows given as nested lists; all rows must have equal length.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix with the given vectors as rows; `cols` is used when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<Integer> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  IntVector row_vector(std::size_t r) const;
  std::vector<IntVector> row_vectors() const;

  void append_row(std::span<const Integer> row);
  /// Drops all-zero rows, keeping the order of the others.
  IntMatrix without_zero_rows() const;
  /// First `count` rows.
  IntMatrix top_rows(std::size_t count) const;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  /// Lexicographic on (rows, cols, entries).
  friend bool operator<(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& k, const IntMatrix& a);
/// Row vector times matrix.
IntVector operator*(std::span<const Integer> v, const IntMatrix& a);

IntMatrix power(const IntMatrix& a, unsigned exponent);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& a);

/// Text format: a "rows cols" line, then one line of space-separated integers per row.
IntMatrix parse_matrix(std::istream& in);
IntMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& a);

std::ostream& operator<<(std::ostream& os, const IntMatrix& a);

}  // namespace nilrfrs
