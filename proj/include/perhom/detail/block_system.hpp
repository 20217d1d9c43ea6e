#pragma once

#include <cstddef>
#include <vector>

#include "perhom/matrix.hpp"

namespace perhom::detail {

/// Assembles a linear operator from blocks acting on row-major vectorized
/// matrix unknowns. With vec(X) row-major, vec(A X B) = (A ⊗ B^T) vec(X).
class BlockSystem {
 public:
  BlockSystem(Field field, std::vector<std::size_t> row_blocks, std::vector<std::size_t> col_blocks)
      : row_offsets_(offsets(row_blocks)),
        col_offsets_(offsets(col_blocks)),
        matrix_(field, row_offsets_.back(), col_offsets_.back()) {}

  void add(std::size_t row_block, std::size_t col_block, const Matrix& m) {
    if (m.empty()) return;
    matrix_.add_block(row_offsets_[row_block], col_offsets_[col_block], m);
  }

  std::size_t row_offset(std::size_t k) const { return row_offsets_[k]; }
  std::size_t col_offset(std::size_t k) const { return col_offsets_[k]; }
  const Matrix& matrix() const { return matrix_; }

 private:
  static std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> out{0};
    for (auto s : sizes) out.push_back(out.back() + s);
    return out;
  }

  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_offsets_;
  Matrix matrix_;
};

/// Block for X -> A X, X of shape (a.cols x cols).
inline Matrix left_mul_operator(const Matrix& a, std::size_t cols) {
  return Matrix::kronecker(a, Matrix::identity(a.field(), cols));
}

/// Block for X -> X B, X of shape (rows x b.rows).
inline Matrix right_mul_operator(const Matrix& b, std::size_t rows) {
  return Matrix::kronecker(Matrix::identity(b.field(), rows), b.transpose());
}

/// Writes m into v (a column) starting at offset, row-major.
inline void vectorize_into(const Matrix& m, Matrix& v, std::size_t offset) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) v.set(offset + r * m.cols() + c, 0, m.at(r, c));
  }
}

inline Matrix unvectorize(const Matrix& v, std::size_t offset, std::size_t rows, std::size_t cols) {
  Matrix m(v.field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, v.at(offset + r * cols + c, 0));
  }
  return m;
}

}  // namespace perhom::detail
