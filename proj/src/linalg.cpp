#include "perhom/linalg.hpp"

#include "perhom/detail/modular.hpp"
#include "perhom/errors.hpp"

namespace perhom {

namespace {

// Row-major working copy in the native scalar representation of the field.
template <typename Scalar>
struct Dense {
  std::size_t rows, cols;
  std::vector<Scalar> v;
  Scalar& operator()(std::size_t r, std::size_t c) { return v[r * cols + c]; }
};

Echelon reduce_rational(const Matrix& m) {
  Dense<mpq_class> a{m.rows(), m.cols(), {}};
  a.v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a.v.push_back(m.at(r, c));
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t pr = row;
    while (pr < a.rows && sgn(a(pr, col)) == 0) ++pr;
    if (pr == a.rows) continue;
    if (pr != row) {
      for (std::size_t c = col; c < a.cols; ++c) std::swap(a(pr, c), a(row, c));
    }
    mpq_class inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols; ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      mpq_class factor = a(r, col);
      for (std::size_t c = col; c < a.cols; ++c) {
        if (sgn(a(row, c)) != 0) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) out.set(r, c, a(r, c));
  }
  return {std::move(out), std::move(pivots)};
}

Echelon reduce_prime(const Matrix& m) {
  using namespace detail;
  const std::uint32_t p = m.field().characteristic();
  Dense<std::uint32_t> a{m.rows(), m.cols(), {}};
  a.v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a.v.push_back(m.residue(r, c));
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t pr = row;
    while (pr < a.rows && a(pr, col) == 0) ++pr;
    if (pr == a.rows) continue;
    if (pr != row) {
      for (std::size_t c = col; c < a.cols; ++c) std::swap(a(pr, c), a(row, c));
    }
    std::uint32_t inv = inv_mod(a(row, col), p);
    for (std::size_t c = col; c < a.cols; ++c) a(row, c) = mul_mod(a(row, c), inv, p);
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (r == row || a(r, col) == 0) continue;
      std::uint32_t factor = a(r, col);
      for (std::size_t c = col; c < a.cols; ++c) {
        if (a(row, c) != 0) a(r, c) = sub_mod(a(r, c), mul_mod(factor, a(row, c), p), p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) out.set(r, c, static_cast<long>(a(r, c)));
  }
  return {std::move(out), std::move(pivots)};
}

}  // namespace

Echelon row_reduce(const Matrix& m) {
  return m.field().is_rational() ? reduce_rational(m) : reduce_prime(m);
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m).rank();
}

Matrix kernel_basis(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  Matrix basis(m.field(), m.cols(), m.cols() - e.rank());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.set(free, k, 1L);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      if (!e.reduced.is_zero_at(r, free)) basis.set(e.pivots[r], k, -e.reduced.at(r, free));
    }
    ++k;
  }
  return basis;
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "solve_linear");
  if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: a and b have different row counts");
  Echelon e = row_reduce(hstack(a, b));
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) {
    std::size_t pc = e.pivots[r];
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t k = 0; k < b.cols(); ++k) x.set(pc, k, e.reduced.at(r, a.cols() + k));
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix not square");
  auto x = solve_linear(m, Matrix::identity(m.field(), m.rows()));
  if (!x) throw InvalidInput("inverse: matrix is singular");
  return *x;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "hstack");
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "vstack");
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

}  // namespace perhom
