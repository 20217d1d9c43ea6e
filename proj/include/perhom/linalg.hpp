#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perhom/matrix.hpp"

namespace perhom {

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row r, for r < rank
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. The pivot of each column is the first row at or
/// below the current one holding a nonzero entry, so results are reproducible.
Echelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of {v : m v = 0}; one column per free variable of the
/// reduced echelon form, with that variable set to 1.
Matrix kernel_basis(const Matrix& m);

/// Some x with a x = b, or nullopt. Free variables are set to zero.
/// Throws DimensionMismatch / FieldMismatch on incompatible inputs.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix; throws InvalidInput when singular.
Matrix inverse(const Matrix& m);

/// [a | b]
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a ; b]
Matrix vstack(const Matrix& a, const Matrix& b);

}  // namespace perhom
