#include "perhom/periodic.hpp"

#include <string>

#include "perhom/detail/block_system.hpp"
#include "perhom/errors.hpp"
#include "perhom/linalg.hpp"

namespace perhom {

namespace {

long sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_period(int n) {
  if (n < 1) throw InvalidInput("period must be >= 1, got " + std::to_string(n));
}

// Offset of X^j inside term (j mod n) of compress(x, n).
std::size_t compressed_offset(const BoundedComplex& x, int n, int j) {
  std::size_t off = 0;
  for (int a = j - n; a >= x.lo(); a -= n) off += x.dim(a);
  return off;
}

// Labels (j, index) of the basis of term r of compress(x, n).
TermLabels compressed_labels(const BoundedComplex& x, int n, int r, int tag) {
  TermLabels labels;
  for (int j = x.lo(); j <= x.hi(); ++j) {
    if (residue(j, n) != r) continue;
    for (std::size_t a = 0; a < x.dim(j); ++a) labels.push_back({tag, j, static_cast<int>(a)});
  }
  return labels;
}

}  // namespace

// ------------------------------------------------------------------- types

PeriodicComplex::PeriodicComplex(Field field, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
    : field_(field), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  require_period(static_cast<int>(dims_.size()));
  if (diffs_.size() != dims_.size()) {
    throw DimensionMismatch("periodic complex: need one differential per term");
  }
  const std::size_t n = dims_.size();
  for (std::size_t i = 0; i < n; ++i) {
    require_same_field(field_, diffs_[i].field(), "periodic complex");
    require_shape(diffs_[i], dims_[(i + 1) % n], dims_[i],
                  "periodic differential " + std::to_string(i));
  }
}

std::size_t PeriodicComplex::total_dim() const {
  std::size_t total = 0;
  for (auto d : dims_) total += d;
  return total;
}

PeriodicChainMap::PeriodicChainMap(PeriodicComplex source, PeriodicComplex target,
                                   std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_field(source_.field(), target_.field(), "periodic chain map");
  if (source_.period() != target_.period()) throw InvalidInput("periodic chain map: periods differ");
  if (static_cast<int>(components_.size()) != source_.period()) {
    throw DimensionMismatch("periodic chain map: need one component per term");
  }
  for (int i = 0; i < period(); ++i) {
    require_shape(component(i), target_.dim(i), source_.dim(i),
                  "periodic chain map component " + std::to_string(i));
  }
}

PeriodicChainMap PeriodicChainMap::identity(const PeriodicComplex& x) {
  std::vector<Matrix> comps;
  for (int i = 0; i < x.period(); ++i) comps.push_back(Matrix::identity(x.field(), x.dim(i)));
  return PeriodicChainMap(x, x, std::move(comps));
}

PeriodicChainMap PeriodicChainMap::zero(const PeriodicComplex& x, const PeriodicComplex& y) {
  std::vector<Matrix> comps;
  for (int i = 0; i < x.period(); ++i) comps.emplace_back(x.field(), y.dim(i), x.dim(i));
  return PeriodicChainMap(x, y, std::move(comps));
}

PeriodicChainMap compose(const PeriodicChainMap& g, const PeriodicChainMap& f) {
  if (!(f.target() == g.source())) throw DimensionMismatch("compose: target of f is not source of g");
  std::vector<Matrix> comps;
  for (int i = 0; i < f.period(); ++i) comps.push_back(g.component(i) * f.component(i));
  return PeriodicChainMap(f.source(), g.target(), std::move(comps));
}

PeriodicHomotopy::PeriodicHomotopy(PeriodicChainMap f, PeriodicChainMap g, std::vector<Matrix> components)
    : f_(std::move(f)), g_(std::move(g)), components_(std::move(components)) {
  if (!(f_.source() == g_.source()) || !(f_.target() == g_.target())) {
    throw DimensionMismatch("periodic homotopy: maps have different source or target");
  }
  if (static_cast<int>(components_.size()) != f_.period()) {
    throw DimensionMismatch("periodic homotopy: need one component per term");
  }
  for (int i = 0; i < f_.period(); ++i) {
    require_shape(component(i), f_.target().dim(i - 1), f_.source().dim(i),
                  "periodic homotopy component " + std::to_string(i));
  }
}

// -------------------------------------------------------------- validation

std::optional<Violation> validate(const PeriodicComplex& p) {
  for (int i = 0; i < p.period(); ++i) {
    if (!(p.diff(i + 1) * p.diff(i)).is_zero()) {
      return Violation{i, "d^" + std::to_string(residue(i + 1, p.period())) + " d^" +
                              std::to_string(i) + " != 0"};
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate(const PeriodicChainMap& f) {
  if (auto v = validate(f.source())) return Violation{v->degree, "source: " + v->message};
  if (auto v = validate(f.target())) return Violation{v->degree, "target: " + v->message};
  for (int i = 0; i < f.period(); ++i) {
    if (!(f.component(i + 1) * f.source().diff(i) == f.target().diff(i) * f.component(i))) {
      return Violation{i, "f d_X != d_Y f"};
    }
  }
  return std::nullopt;
}

std::optional<Violation> check_homotopy(const PeriodicHomotopy& h) {
  const PeriodicComplex& x = h.from().source();
  const PeriodicComplex& y = h.from().target();
  for (int i = 0; i < h.from().period(); ++i) {
    Matrix lhs = h.from().component(i) - h.to().component(i);
    Matrix rhs = h.component(i + 1) * x.diff(i) + y.diff(i - 1) * h.component(i);
    if (!(lhs == rhs)) return Violation{i, "f - g != sigma d + d sigma"};
  }
  return std::nullopt;
}

void require_valid(const PeriodicComplex& p, const char* what) {
  if (auto v = validate(p)) {
    throw InvalidInput(std::string(what) + ": invalid periodic complex at " + std::to_string(v->degree) +
                       ": " + v->message);
  }
}

void require_valid(const PeriodicChainMap& f, const char* what) {
  if (auto v = validate(f)) {
    throw InvalidInput(std::string(what) + ": invalid periodic chain map at " +
                       std::to_string(v->degree) + ": " + v->message);
  }
}

// ------------------------------------------------------ compression/expansion

PeriodicComplex compress(const BoundedComplex& x, int n) {
  require_period(n);
  require_valid(x, "compress");
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 0);
  for (int j = x.lo(); j <= x.hi(); ++j) dims[static_cast<std::size_t>(residue(j, n))] += x.dim(j);
  std::vector<Matrix> diffs;
  for (int r = 0; r < n; ++r) {
    diffs.emplace_back(x.field(), dims[static_cast<std::size_t>(residue(r + 1, n))],
                       dims[static_cast<std::size_t>(r)]);
  }
  for (int j = x.lo(); j < x.hi(); ++j) {
    diffs[static_cast<std::size_t>(residue(j, n))].add_block(compressed_offset(x, n, j + 1),
                                                            compressed_offset(x, n, j), x.diff(j));
  }
  return PeriodicComplex(x.field(), std::move(dims), std::move(diffs));
}

namespace {

// Block assembly of degreewise maps X^j -> Y^j (or Y^{j+shift}) into residue classes.
Matrix compress_components(const BoundedComplex& x, const BoundedComplex& y, int n, int r, int degree_shift,
                           const auto& component) {
  std::size_t rows = 0, cols = 0;
  for (int j = y.lo(); j <= y.hi(); ++j) {
    if (residue(j, n) == residue(r + degree_shift, n)) rows += y.dim(j);
  }
  for (int j = x.lo(); j <= x.hi(); ++j) {
    if (residue(j, n) == r) cols += x.dim(j);
  }
  Matrix m(x.field(), rows, cols);
  for (int j = x.lo(); j <= x.hi(); ++j) {
    if (residue(j, n) != r || !y.in_window(j + degree_shift)) continue;
    m.add_block(compressed_offset(y, n, j + degree_shift), compressed_offset(x, n, j), component(j));
  }
  return m;
}

}  // namespace

PeriodicChainMap compress_map(const ChainMap& f, int n) {
  require_period(n);
  require_valid(f, "compress_map");
  std::vector<Matrix> comps;
  for (int r = 0; r < n; ++r) {
    comps.push_back(compress_components(f.source(), f.target(), n, r, 0,
                                        [&](int j) { return f.component(j); }));
  }
  return PeriodicChainMap(compress(f.source(), n), compress(f.target(), n), std::move(comps));
}

PeriodicHomotopy compress_homotopy(const Homotopy& h, int n) {
  std::vector<Matrix> comps;
  const BoundedComplex& x = h.from().source();
  const BoundedComplex& y = h.from().target();
  for (int r = 0; r < n; ++r) {
    comps.push_back(compress_components(x, y, n, r, -1, [&](int j) { return h.component(j); }));
  }
  return PeriodicHomotopy(compress_map(h.from(), n), compress_map(h.to(), n), std::move(comps));
}

BoundedComplex expand_window(const PeriodicComplex& p, int lo, int hi) {
  if (lo > hi) throw InvalidInput("expand_window: lo > hi");
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    dims.push_back(p.dim(i));
    if (i < hi) diffs.push_back(p.diff(i));
  }
  return BoundedComplex(p.field(), lo, std::move(dims), std::move(diffs));
}

UnitSplitting unit_and_retraction(const BoundedComplex& x, int n, int lo, int hi) {
  require_period(n);
  if (!x.empty() && (lo > x.lo() - n || hi < x.hi() + n)) {
    throw InvalidInput("unit_and_retraction: window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] too small; it must contain [" + std::to_string(x.lo() - n) + ", " +
                       std::to_string(x.hi() + n) + "]");
  }
  BoundedComplex expanded = expand_window(compress(x, n), lo, hi);
  std::vector<Matrix> unit, retraction;
  for (int i = lo; i <= hi; ++i) {
    Matrix in(x.field(), expanded.dim(i), x.dim(i));
    in.set_block(compressed_offset(x, n, i), 0, Matrix::identity(x.field(), x.dim(i)));
    retraction.push_back(in.transpose());
    unit.push_back(std::move(in));
  }
  return UnitSplitting{ChainMap(x, expanded, lo, std::move(unit)),
                       ChainMap(expanded, x, lo, std::move(retraction))};
}

PeriodicComplex periodic_cone(const PeriodicChainMap& f) {
  require_valid(f, "periodic_cone");
  const PeriodicComplex& x = f.source();
  const PeriodicComplex& y = f.target();
  const int n = f.period();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int i = 0; i < n; ++i) {
    dims.push_back(x.dim(i + 1) + y.dim(i));
    Matrix d(x.field(), x.dim(i + 2) + y.dim(i + 1), x.dim(i + 1) + y.dim(i));
    d.set_block(0, 0, -x.diff(i + 1));
    d.set_block(x.dim(i + 2), 0, f.component(i + 1));
    d.set_block(x.dim(i + 2), x.dim(i + 1), y.diff(i));
    diffs.push_back(std::move(d));
  }
  return PeriodicComplex(x.field(), std::move(dims), std::move(diffs));
}

PeriodicComplex reorder(const PeriodicComplex& p, const Reordering& perm) {
  if (static_cast<int>(perm.size()) != p.period()) throw DimensionMismatch("reorder: one permutation per term");
  std::vector<Matrix> diffs;
  for (int r = 0; r < p.period(); ++r) {
    diffs.push_back(permute(p.diff(r), perm[static_cast<std::size_t>(residue(r + 1, p.period()))],
                            perm[static_cast<std::size_t>(r)]));
  }
  return PeriodicComplex(p.field(), p.dims(), std::move(diffs));
}

Reordering cone_compression_reordering(const ChainMap& f, int n) {
  require_period(n);
  const BoundedComplex& x = f.source();
  const BoundedComplex& y = f.target();
  const BoundedComplex c = cone(f).complex;
  Reordering perm;
  for (int r = 0; r < n; ++r) {
    TermLabels from;
    for (int j = c.lo(); j <= c.hi(); ++j) {
      if (residue(j, n) != r) continue;
      for (std::size_t a = 0; a < x.dim(j + 1); ++a) from.push_back({0, j + 1, static_cast<int>(a)});
      for (std::size_t b = 0; b < y.dim(j); ++b) from.push_back({1, j, static_cast<int>(b)});
    }
    TermLabels to = compressed_labels(x, n, residue(r + 1, n), 0);
    TermLabels ys = compressed_labels(y, n, r, 1);
    to.insert(to.end(), ys.begin(), ys.end());
    perm.push_back(match_labels(from, to));
  }
  return perm;
}

// ------------------------------------------------------ cohomology and Hom

std::vector<std::size_t> periodic_cohomology(const PeriodicComplex& p) {
  require_valid(p, "periodic_cohomology");
  std::vector<std::size_t> out;
  for (int i = 0; i < p.period(); ++i) {
    out.push_back(p.dim(i) - rank(p.diff(i)) - rank(p.diff(i - 1)));
  }
  return out;
}

bool is_acyclic(const PeriodicComplex& p) {
  for (auto d : periodic_cohomology(p)) {
    if (d != 0) return false;
  }
  return true;
}

namespace {

// The cyclic analogues of the chain-map and homotopy operators. Unknown block r
// holds f^r (resp. sigma^r); equation block r is the degree-r component.
struct CyclicSystems {
  const PeriodicComplex& x;
  const PeriodicComplex& y;
  int n;

  std::size_t map_block(int r) const { return y.dim(r) * x.dim(r); }
  std::size_t sigma_block(int r) const { return y.dim(r - 1) * x.dim(r); }
  std::size_t idx(int r) const { return static_cast<std::size_t>(residue(r, n)); }

  Matrix chain_operator() const {
    std::vector<std::size_t> rows, cols;
    for (int r = 0; r < n; ++r) {
      rows.push_back(y.dim(r + 1) * x.dim(r));
      cols.push_back(map_block(r));
    }
    detail::BlockSystem sys(x.field(), rows, cols);
    for (int r = 0; r < n; ++r) {
      sys.add(idx(r), idx(r), detail::left_mul_operator(y.diff(r), x.dim(r)));
      sys.add(idx(r), idx(r + 1), -detail::right_mul_operator(x.diff(r), y.dim(r + 1)));
    }
    return sys.matrix();
  }

  Matrix homotopy_operator() const {
    std::vector<std::size_t> rows, cols;
    for (int r = 0; r < n; ++r) {
      rows.push_back(map_block(r));
      cols.push_back(sigma_block(r));
    }
    detail::BlockSystem sys(x.field(), rows, cols);
    for (int r = 0; r < n; ++r) {
      sys.add(idx(r), idx(r), detail::left_mul_operator(y.diff(r - 1), x.dim(r)));
      sys.add(idx(r), idx(r + 1), detail::right_mul_operator(x.diff(r), y.dim(r)));
    }
    return sys.matrix();
  }
};

}  // namespace

HomReport periodic_hom_dims(const PeriodicComplex& x, const PeriodicComplex& y) {
  require_same_field(x.field(), y.field(), "periodic_hom_dims");
  if (x.period() != y.period()) throw InvalidInput("periodic_hom_dims: mismatched periods");
  require_valid(x, "periodic_hom_dims");
  require_valid(y, "periodic_hom_dims");
  CyclicSystems sys{x, y, x.period()};
  Matrix t = sys.chain_operator();
  HomReport report;
  report.chain_maps = t.cols() - rank(t);
  report.null_homotopic = rank(sys.homotopy_operator());
  return report;
}

std::optional<PeriodicHomotopy> find_periodic_homotopy(const PeriodicChainMap& f,
                                                       const PeriodicChainMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) {
    throw DimensionMismatch("find_periodic_homotopy: maps have different source or target");
  }
  require_valid(f, "find_periodic_homotopy");
  require_valid(g, "find_periodic_homotopy");
  const int n = f.period();
  CyclicSystems sys{f.source(), f.target(), n};
  Matrix s = sys.homotopy_operator();
  Matrix rhs(f.source().field(), s.rows(), 1);
  std::size_t offset = 0;
  for (int r = 0; r < n; ++r) {
    detail::vectorize_into(f.component(r) - g.component(r), rhs, offset);
    offset += sys.map_block(r);
  }
  auto solution = solve_linear(s, rhs);
  if (!solution) return std::nullopt;
  std::vector<Matrix> comps;
  offset = 0;
  for (int r = 0; r < n; ++r) {
    comps.push_back(detail::unvectorize(*solution, offset, f.target().dim(r - 1), f.source().dim(r)));
    offset += sys.sigma_block(r);
  }
  PeriodicHomotopy h(f, g, std::move(comps));
  if (auto v = check_homotopy(h)) {
    throw InvariantViolation("find_periodic_homotopy: solver output fails at degree " +
                             std::to_string(v->degree));
  }
  return h;
}

// ------------------------------------------------------ periodization

std::optional<Homotopy> unrolled_contraction(const PeriodicComplex& p) {
  require_valid(p, "unrolled_contraction");
  BoundedComplex unrolled = expand_window(p, -1, p.period());
  return find_null_homotopy(ChainMap::identity(unrolled), 0, p.period() - 1);
}

PeriodicHomotopy periodize_null_homotopy(const PeriodicComplex& p, const Homotopy& s) {
  require_valid(p, "periodize_null_homotopy");
  const int n = p.period();
  BoundedComplex unrolled = expand_window(p, -1, n);
  if (!(s.from() == ChainMap::identity(unrolled)) ||
      !(s.to() == ChainMap::zero(unrolled, unrolled))) {
    throw InvalidInput("periodize_null_homotopy: s must be a homotopy from id to 0 on the window [-1, n]");
  }
  if (auto v = check_homotopy(s, 0, n - 1)) {
    throw InvalidInput("periodize_null_homotopy: input homotopy fails at degree " +
                       std::to_string(v->degree));
  }
  std::vector<Matrix> sigma;
  sigma.push_back(s.component(n) * unrolled.diff(-1) * s.component(0));
  for (int j = 1; j < n; ++j) sigma.push_back(s.component(j));
  PeriodicHomotopy h(PeriodicChainMap::identity(p), PeriodicChainMap::zero(p, p), std::move(sigma));
  if (auto v = check_homotopy(h)) {
    throw InvariantViolation("periodize_null_homotopy: output fails to contract at degree " +
                             std::to_string(v->degree));
  }
  return h;
}

// ------------------------------------------------------ shifts

PeriodicComplex shift_periodic(const PeriodicComplex& p, int l) {
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int i = 0; i < p.period(); ++i) {
    dims.push_back(p.dim(i + l));
    diffs.push_back(p.diff(i + l).scaled(sign(l)));
  }
  return PeriodicComplex(p.field(), std::move(dims), std::move(diffs));
}

ChainMap twist_iso(const BoundedComplex& x, int n) {
  BoundedComplex source = shift(x, n);
  BoundedComplex target = regrade(x, n);
  std::vector<Matrix> comps;
  for (int d = source.lo(); d <= source.hi(); ++d) {
    // degree d of X[n] is X^{d+n}
    comps.push_back(Matrix::identity(x.field(), source.dim(d)).scaled(sign(static_cast<long>(n) * (d + n))));
  }
  return ChainMap(std::move(source), std::move(target), x.empty() ? 0 : x.lo() - n, std::move(comps));
}

PeriodicComplex change_basis(const PeriodicComplex& p, const std::vector<Matrix>& bases) {
  if (static_cast<int>(bases.size()) != p.period()) throw DimensionMismatch("change_basis: one basis per term");
  std::vector<Matrix> diffs;
  for (int r = 0; r < p.period(); ++r) {
    const Matrix& next = bases[static_cast<std::size_t>(residue(r + 1, p.period()))];
    diffs.push_back(inverse(next) * p.diff(r) * bases[static_cast<std::size_t>(r)]);
  }
  return PeriodicComplex(p.field(), p.dims(), std::move(diffs));
}

}  // namespace perhom
