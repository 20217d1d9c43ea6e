#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "perhom/field.hpp"

namespace perhom {

/// Dense exact matrix over a Field, row-major.
///
/// Rational entries are kept as normalized mpq_class values; prime-field
/// entries as residues in [0, p). Matrices act on column vectors, so the
/// composite "g after f" is the product g * f. Zero-row and zero-column
/// shapes are legal and behave as the zero map between the spaces involved.
class Matrix {
 public:
  Matrix() : Matrix(Field::rationals(), 0, 0) {}
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix zero(Field field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols);
  }
  static Matrix identity(Field field, std::size_t n);
  /// Integer literal entries; every row must have the same length.
  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<long>> rows);
  /// Rows of exact rationals; over F_p each entry a/b is mapped to a * b^{-1}.
  /// `cols` is needed only to pin the width of a matrix with no rows.
  static Matrix from_rows(Field field, const std::vector<std::vector<mpq_class>>& rows,
                          std::size_t cols = 0);
  static Matrix kronecker(const Matrix& a, const Matrix& b);
  /// Block-diagonal sum diag(blocks...).
  static Matrix direct_sum(const std::vector<Matrix>& blocks);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  /// Entry as a rational; over F_p the canonical representative in [0, p).
  mpq_class at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const mpq_class& value);
  void set(std::size_t r, std::size_t c, long value);
  bool is_zero_at(std::size_t r, std::size_t c) const;
  /// Raw residue access; only meaningful over F_p.
  std::uint32_t residue(std::size_t r, std::size_t c) const { return fp_[r * cols_ + c]; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  /// Adds b into the block starting at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix scaled(long factor) const;
  Matrix scaled(const mpq_class& factor) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(const Matrix& a) { return a.scaled(-1); }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Entries rendered as "a/b" or "a" strings, row by row; for diagnostics.
  std::string to_string() const;

 private:
  void require_same_shape(const Matrix& o, const char* what) const;

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> q_;       // used when field_ is the rationals
  std::vector<std::uint32_t> fp_;  // used when field_ is a prime field
};

/// Reduces a rational into F_p; throws InvalidInput when the denominator vanishes mod p.
std::uint32_t reduce_mod(const mpq_class& value, std::uint32_t p);

}  // namespace perhom
