#include "perhom/complex.hpp"

#include <algorithm>
#include <sstream>

#include "perhom/detail/block_system.hpp"
#include "perhom/errors.hpp"
#include "perhom/linalg.hpp"

namespace perhom {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(what + ": expected " + std::to_string(rows) + "x" +
                            std::to_string(cols) + ", got " + shape(m));
  }
}

long sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

// Union of the windows of two complexes; empty windows are ignored.
std::pair<int, int> union_window(const BoundedComplex& x, const BoundedComplex& y) {
  if (x.empty() && y.empty()) return {0, -1};
  if (x.empty()) return {y.lo(), y.hi()};
  if (y.empty()) return {x.lo(), x.hi()};
  return {std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

}  // namespace

// ---------------------------------------------------------------- complexes

BoundedComplex::BoundedComplex(Field field, int lo, std::vector<std::size_t> dims,
                               std::vector<Matrix> diffs)
    : field_(field), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (diffs_.size() != expected) {
    throw DimensionMismatch("complex: " + std::to_string(dims_.size()) + " terms need " +
                            std::to_string(expected) + " differentials, got " +
                            std::to_string(diffs_.size()));
  }
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    require_same_field(field_, diffs_[k].field(), "complex");
    require_shape(diffs_[k], dims_[k + 1], dims_[k],
                  "complex differential at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }
  if (dims_.empty()) lo_ = 0;
}

BoundedComplex BoundedComplex::concentrated(Field field, int degree, std::size_t dim) {
  return BoundedComplex(field, degree, {dim}, {});
}

std::size_t BoundedComplex::dim(int i) const {
  return in_window(i) ? dims_[static_cast<std::size_t>(i - lo_)] : 0;
}

Matrix BoundedComplex::diff(int i) const {
  if (in_window(i) && in_window(i + 1)) return diffs_[static_cast<std::size_t>(i - lo_)];
  return Matrix(field_, dim(i + 1), dim(i));
}

std::size_t BoundedComplex::total_dim() const {
  std::size_t total = 0;
  for (auto d : dims_) total += d;
  return total;
}

long BoundedComplex::euler_characteristic() const {
  long chi = 0;
  for (int i = lo(); i <= hi(); ++i) chi += sign(i) * static_cast<long>(dim(i));
  return chi;
}

bool operator==(const BoundedComplex& a, const BoundedComplex& b) {
  return a.field_ == b.field_ && a.lo_ == b.lo_ && a.dims_ == b.dims_ && a.diffs_ == b.diffs_;
}

// --------------------------------------------------------------- chain maps

ChainMap::ChainMap(BoundedComplex source, BoundedComplex target, int lo,
                   std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo),
      components_(std::move(components)) {
  require_same_field(source_.field(), target_.field(), "chain map");
  for (std::size_t k = 0; k < components_.size(); ++k) {
    int i = lo_ + static_cast<int>(k);
    require_same_field(source_.field(), components_[k].field(), "chain map");
    require_shape(components_[k], target_.dim(i), source_.dim(i),
                  "chain map component at degree " + std::to_string(i));
  }
}

ChainMap ChainMap::identity(const BoundedComplex& x) {
  std::vector<Matrix> comps;
  for (int i = x.lo(); i <= x.hi(); ++i) comps.push_back(Matrix::identity(x.field(), x.dim(i)));
  return ChainMap(x, x, x.lo(), std::move(comps));
}

ChainMap ChainMap::zero(const BoundedComplex& x, const BoundedComplex& y) {
  return ChainMap(x, y, 0, {});
}

Matrix ChainMap::component(int i) const {
  int k = i - lo_;
  if (k >= 0 && k < static_cast<int>(components_.size())) return components_[static_cast<std::size_t>(k)];
  return Matrix(field(), target_.dim(i), source_.dim(i));
}

int ChainMap::lo() const { return union_window(source_, target_).first; }
int ChainMap::hi() const { return union_window(source_, target_).second; }

ChainMap ChainMap::scaled(long factor) const {
  std::vector<Matrix> comps;
  for (const auto& c : components_) comps.push_back(c.scaled(factor));
  return ChainMap(source_, target_, lo_, std::move(comps));
}

ChainMap operator-(const ChainMap& f, const ChainMap& g) {
  if (!(f.source_ == g.source_) || !(f.target_ == g.target_)) {
    throw DimensionMismatch("chain map difference: maps have different source or target");
  }
  std::vector<Matrix> comps;
  for (int i = f.lo(); i <= f.hi(); ++i) comps.push_back(f.component(i) - g.component(i));
  return ChainMap(f.source_, f.target_, f.lo(), std::move(comps));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    if (!(a.component(i) == b.component(i))) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f is not source of g");
  std::vector<Matrix> comps;
  int lo = f.source().empty() ? 0 : f.source().lo();
  for (int i = lo; i <= f.source().hi(); ++i) comps.push_back(g.component(i) * f.component(i));
  return ChainMap(f.source(), g.target(), lo, std::move(comps));
}

// ---------------------------------------------------------------- homotopies

Homotopy::Homotopy(ChainMap f, ChainMap g, int lo, std::vector<Matrix> components)
    : f_(std::move(f)), g_(std::move(g)), lo_(lo), components_(std::move(components)) {
  if (!(f_.source() == g_.source()) || !(f_.target() == g_.target())) {
    throw DimensionMismatch("homotopy: maps have different source or target");
  }
  for (std::size_t k = 0; k < components_.size(); ++k) {
    int i = lo_ + static_cast<int>(k);
    require_shape(components_[k], f_.target().dim(i - 1), f_.source().dim(i),
                  "homotopy component at degree " + std::to_string(i));
  }
}

Matrix Homotopy::component(int i) const {
  int k = i - lo_;
  if (k >= 0 && k < static_cast<int>(components_.size())) return components_[static_cast<std::size_t>(k)];
  return Matrix(f_.field(), f_.target().dim(i - 1), f_.source().dim(i));
}

// ---------------------------------------------------------------- validation

std::optional<Violation> validate(const BoundedComplex& c) {
  for (int i = c.lo(); i + 2 <= c.hi(); ++i) {
    if (!(c.diff(i + 1) * c.diff(i)).is_zero()) {
      return Violation{i, "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " != 0"};
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate(const ChainMap& f) {
  if (auto v = validate(f.source())) return Violation{v->degree, "source: " + v->message};
  if (auto v = validate(f.target())) return Violation{v->degree, "target: " + v->message};
  for (int i = f.lo() - 1; i <= f.hi(); ++i) {
    if (!(f.component(i + 1) * f.source().diff(i) == f.target().diff(i) * f.component(i))) {
      return Violation{i, "f^" + std::to_string(i + 1) + " d_X != d_Y f^" + std::to_string(i)};
    }
  }
  return std::nullopt;
}

std::optional<Violation> check_homotopy(const Homotopy& h, int lo, int hi) {
  const BoundedComplex& x = h.from().source();
  const BoundedComplex& y = h.from().target();
  for (int i = lo; i <= hi; ++i) {
    Matrix lhs = h.from().component(i) - h.to().component(i);
    Matrix rhs = h.component(i + 1) * x.diff(i) + y.diff(i - 1) * h.component(i);
    if (!(lhs == rhs)) {
      return Violation{i, "f - g != sigma d + d sigma at degree " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

std::optional<Violation> check_homotopy(const Homotopy& h) {
  return check_homotopy(h, h.from().lo(), h.from().hi());
}

void require_valid(const BoundedComplex& c, const char* what) {
  if (auto v = validate(c)) {
    throw InvalidInput(std::string(what) + ": invalid complex at degree " + std::to_string(v->degree) +
                       ": " + v->message);
  }
}

void require_valid(const ChainMap& f, const char* what) {
  if (auto v = validate(f)) {
    throw InvalidInput(std::string(what) + ": invalid chain map at degree " +
                       std::to_string(v->degree) + ": " + v->message);
  }
}

// ---------------------------------------------------------------- operations

BoundedComplex shift(const BoundedComplex& c, int l) {
  std::vector<Matrix> diffs;
  for (const auto& d : c.diffs()) diffs.push_back(d.scaled(sign(l)));
  return BoundedComplex(c.field(), c.lo() - l, c.dims(), std::move(diffs));
}

BoundedComplex regrade(const BoundedComplex& c, int l) {
  return BoundedComplex(c.field(), c.lo() - l, c.dims(), c.diffs());
}

Cone cone(const ChainMap& f) {
  require_valid(f, "cone");
  const BoundedComplex& x = f.source();
  const BoundedComplex& y = f.target();
  const Field field = f.field();

  int lo = 0, hi = -1;
  if (!x.empty() || !y.empty()) {
    lo = x.empty() ? y.lo() : (y.empty() ? x.lo() - 1 : std::min(x.lo() - 1, y.lo()));
    hi = x.empty() ? y.hi() : (y.empty() ? x.hi() - 1 : std::max(x.hi() - 1, y.hi()));
  }
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(x.dim(i + 1) + y.dim(i));
  std::vector<Matrix> diffs;
  for (int i = lo; i < hi; ++i) {
    Matrix d(field, x.dim(i + 2) + y.dim(i + 1), x.dim(i + 1) + y.dim(i));
    d.set_block(0, 0, -x.diff(i + 1));
    d.set_block(x.dim(i + 2), 0, f.component(i + 1));
    d.set_block(x.dim(i + 2), x.dim(i + 1), y.diff(i));
    diffs.push_back(std::move(d));
  }
  BoundedComplex c(field, lo, std::move(dims), std::move(diffs));

  std::vector<Matrix> inc, proj;
  for (int i = lo; i <= hi; ++i) {
    Matrix in(field, c.dim(i), y.dim(i));
    in.set_block(x.dim(i + 1), 0, Matrix::identity(field, y.dim(i)));
    inc.push_back(std::move(in));
    Matrix pr(field, x.dim(i + 1), c.dim(i));
    pr.set_block(0, 0, Matrix::identity(field, x.dim(i + 1)));
    proj.push_back(std::move(pr));
  }
  ChainMap inclusion(y, c, lo, std::move(inc));
  ChainMap projection(c, shift(x, 1), lo, std::move(proj));
  return Cone{std::move(c), std::move(inclusion), std::move(projection)};
}

std::vector<std::pair<int, std::size_t>> cohomology_dims(const BoundedComplex& c) {
  require_valid(c, "cohomology_dims");
  std::vector<std::pair<int, std::size_t>> out;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    std::size_t cycles = c.dim(i) - rank(c.diff(i));
    out.emplace_back(i, cycles - rank(c.diff(i - 1)));
  }
  return out;
}

bool is_acyclic(const BoundedComplex& c) {
  for (const auto& [degree, d] : cohomology_dims(c)) {
    if (d != 0) return false;
  }
  return true;
}

namespace {

// Unknowns f^i (i in [lo, hi]) and sigma^i (i in [lo, hi + 1]) laid out in
// increasing degree; equations of the chain-map operator in degrees [lo, hi - 1]
// and of the homotopy operator in degrees [eq_lo, eq_hi].
struct HomSystems {
  const BoundedComplex& x;
  const BoundedComplex& y;
  int lo, hi;

  std::size_t map_block(int i) const { return y.dim(i) * x.dim(i); }
  std::size_t sigma_block(int i) const { return y.dim(i - 1) * x.dim(i); }

  Matrix chain_operator() const {
    std::vector<std::size_t> rows, cols;
    for (int i = lo; i < hi; ++i) rows.push_back(y.dim(i + 1) * x.dim(i));
    for (int i = lo; i <= hi; ++i) cols.push_back(map_block(i));
    detail::BlockSystem sys(x.field(), rows, cols);
    for (int i = lo; i < hi; ++i) {
      auto r = static_cast<std::size_t>(i - lo);
      sys.add(r, r, detail::left_mul_operator(y.diff(i), x.dim(i)));
      sys.add(r, r + 1, -detail::right_mul_operator(x.diff(i), y.dim(i + 1)));
    }
    return sys.matrix();
  }

  Matrix homotopy_operator(int eq_lo, int eq_hi) const {
    std::vector<std::size_t> rows, cols;
    for (int i = eq_lo; i <= eq_hi; ++i) rows.push_back(map_block(i));
    for (int i = lo; i <= hi + 1; ++i) cols.push_back(sigma_block(i));
    detail::BlockSystem sys(x.field(), rows, cols);
    for (int i = eq_lo; i <= eq_hi; ++i) {
      auto r = static_cast<std::size_t>(i - eq_lo);
      if (i >= lo && i <= hi + 1) {
        sys.add(r, static_cast<std::size_t>(i - lo), detail::left_mul_operator(y.diff(i - 1), x.dim(i)));
      }
      if (i + 1 >= lo && i + 1 <= hi + 1) {
        sys.add(r, static_cast<std::size_t>(i + 1 - lo), detail::right_mul_operator(x.diff(i), y.dim(i)));
      }
    }
    return sys.matrix();
  }
};

}  // namespace

HomReport hom_space_dims(const BoundedComplex& x, const BoundedComplex& y) {
  require_same_field(x.field(), y.field(), "hom_space_dims");
  require_valid(x, "hom_space_dims");
  require_valid(y, "hom_space_dims");
  auto [lo, hi] = union_window(x, y);
  if (lo > hi) return {};
  HomSystems sys{x, y, lo, hi};
  Matrix t = sys.chain_operator();
  Matrix s = sys.homotopy_operator(lo, hi);
  HomReport report;
  report.chain_maps = t.cols() - rank(t);
  report.null_homotopic = rank(s);
  return report;
}

std::vector<ChainMap> chain_map_basis(const BoundedComplex& x, const BoundedComplex& y) {
  require_same_field(x.field(), y.field(), "chain_map_basis");
  auto [lo, hi] = union_window(x, y);
  std::vector<ChainMap> basis;
  if (lo > hi) return basis;
  HomSystems sys{x, y, lo, hi};
  Matrix kernel = kernel_basis(sys.chain_operator());
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    Matrix v = kernel.block(0, k, kernel.rows(), 1);
    std::vector<Matrix> comps;
    std::size_t offset = 0;
    for (int i = lo; i <= hi; ++i) {
      comps.push_back(detail::unvectorize(v, offset, y.dim(i), x.dim(i)));
      offset += sys.map_block(i);
    }
    basis.emplace_back(x, y, lo, std::move(comps));
  }
  return basis;
}

std::optional<Homotopy> find_null_homotopy(const ChainMap& f, int eq_lo, int eq_hi) {
  require_valid(f, "find_null_homotopy");
  const BoundedComplex& x = f.source();
  const BoundedComplex& y = f.target();
  int lo = f.lo(), hi = f.hi();
  ChainMap zero = ChainMap::zero(x, y);
  if (lo > hi) return Homotopy(f, zero, 0, {});
  HomSystems sys{x, y, lo, hi};
  Matrix s = sys.homotopy_operator(eq_lo, eq_hi);

  Matrix rhs(f.field(), s.rows(), 1);
  std::size_t offset = 0;
  for (int i = eq_lo; i <= eq_hi; ++i) {
    detail::vectorize_into(f.component(i), rhs, offset);
    offset += sys.map_block(i);
  }
  auto solution = solve_linear(s, rhs);
  if (!solution) return std::nullopt;

  std::vector<Matrix> comps;
  offset = 0;
  for (int i = lo; i <= hi + 1; ++i) {
    comps.push_back(detail::unvectorize(*solution, offset, y.dim(i - 1), x.dim(i)));
    offset += sys.sigma_block(i);
  }
  Homotopy h(f, zero, lo, std::move(comps));
  if (auto v = check_homotopy(h, eq_lo, eq_hi)) {
    throw InvariantViolation("find_null_homotopy: solver output fails at degree " +
                             std::to_string(v->degree));
  }
  return h;
}

std::optional<Homotopy> find_null_homotopy(const ChainMap& f) {
  return find_null_homotopy(f, f.lo(), f.hi());
}

BoundedComplex tensor_complex(const BoundedComplex& x, const BoundedComplex& y) {
  require_same_field(x.field(), y.field(), "tensor_complex");
  const Field field = x.field();
  if (x.empty() || y.empty()) return BoundedComplex(field);
  int lo = x.lo() + y.lo();
  int hi = x.hi() + y.hi();

  // Offset of X^i ⊗ Y^{l-i} inside term l.
  auto offset = [&](int l, int i) {
    std::size_t off = 0;
    for (int a = x.lo(); a < i; ++a) {
      if (y.in_window(l - a)) off += x.dim(a) * y.dim(l - a);
    }
    return off;
  };
  auto term_dim = [&](int l) { return offset(l, x.hi() + 1); };

  std::vector<std::size_t> dims;
  for (int l = lo; l <= hi; ++l) dims.push_back(term_dim(l));
  std::vector<Matrix> diffs;
  for (int l = lo; l < hi; ++l) {
    Matrix d(field, term_dim(l + 1), term_dim(l));
    for (int i = x.lo(); i <= x.hi(); ++i) {
      int j = l - i;
      if (!y.in_window(j)) continue;
      std::size_t col = offset(l, i);
      if (x.in_window(i + 1)) {
        d.add_block(offset(l + 1, i + 1), col,
                    Matrix::kronecker(x.diff(i), Matrix::identity(field, y.dim(j))));
      }
      if (y.in_window(j + 1)) {
        d.add_block(offset(l + 1, i), col,
                    Matrix::kronecker(Matrix::identity(field, x.dim(i)), y.diff(j)).scaled(sign(i)));
      }
    }
    diffs.push_back(std::move(d));
  }
  return BoundedComplex(field, lo, std::move(dims), std::move(diffs));
}

}  // namespace perhom
