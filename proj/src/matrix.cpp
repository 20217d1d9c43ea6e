#include "perhom/matrix.hpp"

#include <sstream>

#include "perhom/detail/modular.hpp"
#include "perhom/errors.hpp"

namespace perhom {

using detail::add_mod;
using detail::mul_mod;
using detail::sub_mod;

std::uint32_t reduce_mod(const mpq_class& value, std::uint32_t p) {
  mpz_class pz(p);
  mpz_class num = value.get_num() % pz;
  mpz_class den = value.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw InvalidInput("denominator divisible by p=" + std::to_string(p));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return mul_mod(n, detail::inv_mod(d, p), p);
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (field_.is_rational()) {
    q_.assign(rows * cols, mpq_class(0));
  } else {
    fp_.assign(rows * cols, 0);
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1L);
  return m;
}

Matrix Matrix::from_rows(Field field, std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t nrows = rows.size();
  std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
  Matrix m(field, nrows, ncols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw DimensionMismatch("from_rows: ragged rows");
    std::size_t c = 0;
    for (long v : row) m.set(r, c++, v);
    ++r;
  }
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<mpq_class>>& rows,
                         std::size_t cols) {
  std::size_t ncols = rows.empty() ? cols : rows.front().size();
  Matrix m(field, rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw DimensionMismatch("from_rows: ragged rows");
    for (std::size_t c = 0; c < ncols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_, "kronecker");
  Matrix k(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  const std::uint32_t p = a.field_.characteristic();
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a.is_zero_at(i, j)) continue;
      for (std::size_t r = 0; r < b.rows_; ++r) {
        for (std::size_t c = 0; c < b.cols_; ++c) {
          std::size_t idx = (i * b.rows_ + r) * k.cols_ + (j * b.cols_ + c);
          if (p == 0) {
            k.q_[idx] = a.q_[i * a.cols_ + j] * b.q_[r * b.cols_ + c];
          } else {
            k.fp_[idx] = mul_mod(a.fp_[i * a.cols_ + j], b.fp_[r * b.cols_ + c], p);
          }
        }
      }
    }
  }
  return k;
}

Matrix Matrix::direct_sum(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front().field_, b.field_, "direct_sum");
    rows += b.rows_;
    cols += b.cols_;
  }
  Matrix m(blocks.front().field_, rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows_;
    c += b.cols_;
  }
  return m;
}

mpq_class Matrix::at(std::size_t r, std::size_t c) const {
  if (field_.is_rational()) return q_[r * cols_ + c];
  return mpq_class(static_cast<unsigned long>(fp_[r * cols_ + c]));
}

void Matrix::set(std::size_t r, std::size_t c, const mpq_class& value) {
  if (field_.is_rational()) {
    q_[r * cols_ + c] = value;
    q_[r * cols_ + c].canonicalize();
  } else {
    fp_[r * cols_ + c] = reduce_mod(value, field_.characteristic());
  }
}

void Matrix::set(std::size_t r, std::size_t c, long value) {
  if (field_.is_rational()) {
    q_[r * cols_ + c] = value;
  } else {
    fp_[r * cols_ + c] = detail::from_signed(value, field_.characteristic());
  }
}

bool Matrix::is_zero_at(std::size_t r, std::size_t c) const {
  return field_.is_rational() ? sgn(q_[r * cols_ + c]) == 0 : fp_[r * cols_ + c] == 0;
}

bool Matrix::is_zero() const {
  if (field_.is_rational()) {
    for (const auto& v : q_) {
      if (sgn(v) != 0) return false;
    }
    return true;
  }
  for (auto v : fp_) {
    if (v != 0) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (field_.is_rational()) {
        t.q_[c * rows_ + r] = q_[r * cols_ + c];
      } else {
        t.fp_[c * rows_ + r] = fp_[r * cols_ + c];
      }
    }
  }
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block: out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (field_.is_rational()) {
        b.q_[r * nc + c] = q_[(r0 + r) * cols_ + c0 + c];
      } else {
        b.fp_[r * nc + c] = fp_[(r0 + r) * cols_ + c0 + c];
      }
    }
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same_field(field_, b.field_, "set_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block: out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) {
      if (field_.is_rational()) {
        q_[(r0 + r) * cols_ + c0 + c] = b.q_[r * b.cols_ + c];
      } else {
        fp_[(r0 + r) * cols_ + c0 + c] = b.fp_[r * b.cols_ + c];
      }
    }
  }
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same_field(field_, b.field_, "add_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("add_block: out of range");
  const std::uint32_t p = field_.characteristic();
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) {
      std::size_t idx = (r0 + r) * cols_ + c0 + c;
      if (p == 0) {
        q_[idx] += b.q_[r * b.cols_ + c];
      } else {
        fp_[idx] = add_mod(fp_[idx], b.fp_[r * b.cols_ + c], p);
      }
    }
  }
}

Matrix Matrix::scaled(long factor) const {
  Matrix m = *this;
  if (field_.is_rational()) {
    for (auto& v : m.q_) v *= factor;
  } else {
    const std::uint32_t p = field_.characteristic();
    std::uint32_t f = detail::from_signed(factor, p);
    for (auto& v : m.fp_) v = mul_mod(v, f, p);
  }
  return m;
}

Matrix Matrix::scaled(const mpq_class& factor) const {
  Matrix m = *this;
  if (field_.is_rational()) {
    for (auto& v : m.q_) v *= factor;
  } else {
    const std::uint32_t p = field_.characteristic();
    std::uint32_t f = reduce_mod(factor, p);
    for (auto& v : m.fp_) v = mul_mod(v, f, p);
  }
  return m;
}

void Matrix::require_same_shape(const Matrix& o, const char* what) const {
  require_same_field(field_, o.field_, what);
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << rows_ << "x" << cols_ << " vs " << o.rows_ << "x" << o.cols_;
    throw DimensionMismatch(msg.str());
  }
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(o, "matrix +");
  if (field_.is_rational()) {
    for (std::size_t i = 0; i < q_.size(); ++i) q_[i] += o.q_[i];
  } else {
    const std::uint32_t p = field_.characteristic();
    for (std::size_t i = 0; i < fp_.size(); ++i) fp_[i] = add_mod(fp_[i], o.fp_[i], p);
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(o, "matrix -");
  if (field_.is_rational()) {
    for (std::size_t i = 0; i < q_.size(); ++i) q_[i] -= o.q_[i];
  } else {
    const std::uint32_t p = field_.characteristic();
    for (std::size_t i = 0; i < fp_.size(); ++i) fp_[i] = sub_mod(fp_[i], o.fp_[i], p);
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_, "matrix *");
  if (a.cols_ != b.rows_) {
    std::ostringstream msg;
    msg << "matrix *: inner dimensions " << a.rows_ << "x" << a.cols_ << " * " << b.rows_ << "x"
        << b.cols_;
    throw DimensionMismatch(msg.str());
  }
  Matrix m(a.field_, a.rows_, b.cols_);
  if (a.field_.is_rational()) {
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const mpq_class& aik = a.q_[i * a.cols_ + k];
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const mpq_class& bkj = b.q_[k * b.cols_ + j];
          if (sgn(bkj) != 0) m.q_[i * b.cols_ + j] += aik * bkj;
        }
      }
    }
  } else {
    const std::uint64_t p = a.field_.characteristic();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint64_t aik = a.fp_[i * a.cols_ + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          acc[j] = (acc[j] + aik * b.fp_[k * b.cols_ + j]) % p;
        }
      }
      for (std::size_t j = 0; j < b.cols_; ++j) m.fp_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
    }
  }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ &&
         a.fp_ == b.fp_;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ", ";
      out << at(r, c).get_str();
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

}  // namespace perhom
