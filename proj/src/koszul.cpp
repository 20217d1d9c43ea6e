#include "perhom/koszul.hpp"

#include <algorithm>
#include <numeric>

#include "perhom/errors.hpp"
#include "perhom/linalg.hpp"

namespace perhom {

namespace {

long sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

Matrix degree_signs(const LambdaDual& l, const Field& field, int i) {
  Matrix d(field, l.dim(), l.dim());
  for (std::size_t k = 0; k < l.dim(); ++k) d.set(k, k, sign(l.degrees[k] + i));
  return d;
}

void require_polynomial(const Algebra& a, const char* what) {
  if (a.kind != AlgebraKind::Polynomial) throw InvalidInput(std::string(what) + ": expected modules over S(c)");
}

// Λ-action on a direct sum of cells Λ*⊗V, one block per cell.
std::vector<Matrix> cell_actions(const LambdaDual& l, const Field& field, const std::vector<std::size_t>& cell_dims) {
  std::vector<Matrix> out;
  for (int j = 0; j < l.c; ++j) {
    std::vector<Matrix> blocks;
    for (auto d : cell_dims) blocks.push_back(Matrix::kronecker(l.action[static_cast<std::size_t>(j)], Matrix::identity(field, d)));
    out.push_back(blocks.empty() ? Matrix(field, 0, 0) : Matrix::direct_sum(blocks));
  }
  return out;
}

template <typename Term>
std::optional<Violation> check_lambda(const Term& diff, const std::vector<std::vector<Matrix>>& action, int lo,
                                      int count, bool cyclic) {
  for (int k = 0; k < count; ++k) {
    int next = cyclic ? (k + 1) % count : k + 1;
    if (!cyclic && next >= count) continue;
    const Matrix d = diff(lo + k);
    for (std::size_t j = 0; j < action[static_cast<std::size_t>(k)].size(); ++j) {
      if (!(d * action[static_cast<std::size_t>(k)][j] == action[static_cast<std::size_t>(next)][j] * d)) {
        return Violation{lo + k, "differential does not commute with ξ_" + std::to_string(j + 1)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> LambdaDual::graded_dims() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(c + 1), 0);
  for (int d : degrees) ++out[static_cast<std::size_t>(d)];
  return out;
}

LambdaDual lambda_dual(const Field& field, int c) {
  if (c < 1 || c > 6) throw InvalidInput("lambda_dual: c must lie in [1, 6], got " + std::to_string(c));
  LambdaDual l;
  l.c = c;
  for (int d = 0; d <= c; ++d) {
    for (auto& k : index_subsets(c, d)) {
      l.basis.push_back(std::move(k));
      l.degrees.push_back(d);
    }
  }
  std::vector<std::size_t> position(std::size_t{1} << c);
  auto mask = [](const std::vector<int>& k) {
    std::size_t m = 0;
    for (int t : k) m |= std::size_t{1} << t;
    return m;
  };
  for (std::size_t k = 0; k < l.basis.size(); ++k) position[mask(l.basis[k])] = k;
  for (int j = 0; j < c; ++j) {
    Matrix a(field, l.dim(), l.dim());
    for (std::size_t k = 0; k < l.basis.size(); ++k) {
      const auto& set = l.basis[k];
      if (std::find(set.begin(), set.end(), j) == set.end()) continue;
      auto before = std::count_if(set.begin(), set.end(), [j](int t) { return t < j; });
      std::size_t target = position[mask(set) & ~(std::size_t{1} << j)];
      a.set(target, k, sign(l.degrees[k] + before));
    }
    l.action.push_back(std::move(a));
  }
  return l;
}

BGGComplex bgg_module(const GradedModule& m) {
  require_polynomial(m.algebra(), "bgg_module");
  require_valid(m, "bgg_module");
  const Field& field = m.field();
  const LambdaDual l = lambda_dual(field, m.algebra().generators);
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  std::vector<std::vector<Matrix>> actions;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    dims.push_back(l.dim() * m.dim(i));
    actions.push_back(cell_actions(l, field, {m.dim(i)}));
    if (i == m.hi()) continue;
    Matrix d(field, l.dim() * m.dim(i + 1), l.dim() * m.dim(i));
    const Matrix signs = degree_signs(l, field, i);
    for (int j = 0; j < l.c; ++j) d += Matrix::kronecker(l.action[static_cast<std::size_t>(j)] * signs, m.action(j, i));
    diffs.push_back(std::move(d));
  }
  BGGComplex out{BoundedComplex(field, m.lo(), std::move(dims), std::move(diffs)), std::move(actions)};
  if (auto v = check_bgg(out)) throw InvariantViolation("bgg_module: " + v->message);
  return out;
}

BoundedComplex total_complex(const DoubleComplex& grid) {
  const Field& field = grid.field;
  const int rows = static_cast<int>(grid.dims.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(grid.dims.front().size());
  if (rows == 0 || cols == 0) return BoundedComplex(field);
  if (grid.horizontal.size() != grid.dims.size() || grid.vertical.size() != grid.dims.size()) {
    throw DimensionMismatch("total_complex: maps needed for every cell");
  }
  auto cell = [&](int a, int b) -> std::size_t {
    if (a < 0 || a >= rows || b < 0 || b >= cols) return 0;
    return grid.dims[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  for (int a = 0; a < rows; ++a) {
    if (static_cast<int>(grid.dims[static_cast<std::size_t>(a)].size()) != cols ||
        static_cast<int>(grid.horizontal[static_cast<std::size_t>(a)].size()) != cols ||
        static_cast<int>(grid.vertical[static_cast<std::size_t>(a)].size()) != cols) {
      throw DimensionMismatch("total_complex: grid is not rectangular");
    }
    for (int b = 0; b < cols; ++b) {
      const Matrix& h = grid.horizontal[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const Matrix& v = grid.vertical[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if ((a + 1 < rows && (h.rows() != cell(a + 1, b) || h.cols() != cell(a, b))) ||
          (b + 1 < cols && (v.rows() != cell(a, b + 1) || v.cols() != cell(a, b)))) {
        throw DimensionMismatch("total_complex: map out of cell (" + std::to_string(grid.lo_i + a) + ", " +
                                std::to_string(grid.lo_j + b) + ") has the wrong shape");
      }
    }
  }
  // term index t = a + b; offset of cell (a, t - a) within term t
  auto offset = [&](int t, int a) {
    std::size_t off = 0;
    for (int e = 0; e < a; ++e) off += cell(e, t - e);
    return off;
  };
  const int terms = rows + cols - 1;
  std::vector<std::size_t> dims;
  for (int t = 0; t < terms; ++t) dims.push_back(offset(t, rows));
  std::vector<Matrix> diffs;
  for (int t = 0; t + 1 < terms; ++t) {
    Matrix d(field, dims[static_cast<std::size_t>(t + 1)], dims[static_cast<std::size_t>(t)]);
    for (int a = 0; a < rows; ++a) {
      int b = t - a;
      if (b < 0 || b >= cols) continue;
      if (a + 1 < rows) {
        d.add_block(offset(t + 1, a + 1), offset(t, a), grid.horizontal[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      }
      if (b + 1 < cols) {
        d.add_block(offset(t + 1, a), offset(t, a),
                    grid.vertical[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].scaled(sign(grid.lo_i + a)));
      }
    }
    diffs.push_back(std::move(d));
  }
  BoundedComplex total(field, grid.lo_i + grid.lo_j, std::move(dims), std::move(diffs));
  if (auto v = validate(total)) {
    throw InvalidInput("total_complex: D∘D != 0 at total degree " + std::to_string(v->degree));
  }
  return total;
}

BGGComplex bgg_complex(const GradedComplex& mc) {
  require_polynomial(mc.algebra(), "bgg_complex");
  if (auto v = validate(mc)) {
    throw InvalidInput("bgg_complex: invalid graded complex at degree " + std::to_string(v->degree) + ": " + v->message);
  }
  const Field& field = mc.field();
  const LambdaDual l = lambda_dual(field, mc.algebra().generators);
  if (mc.empty() || mc.internal_hi() < mc.internal_lo()) return BGGComplex{BoundedComplex(field), {}};
  DoubleComplex grid{field, mc.internal_lo(), mc.lo(), {}, {}, {}};
  std::vector<BGGComplex> columns;
  for (int j = mc.lo(); j <= mc.hi(); ++j) columns.push_back(bgg_module(mc.term(j)));
  const Matrix id_l = Matrix::identity(field, l.dim());
  for (int i = mc.internal_lo(); i <= mc.internal_hi(); ++i) {
    std::vector<std::size_t> dims;
    std::vector<Matrix> h, v;
    for (int j = mc.lo(); j <= mc.hi(); ++j) {
      const BoundedComplex& col = columns[static_cast<std::size_t>(j - mc.lo())].complex;
      dims.push_back(col.dim(i));
      h.push_back(col.diff(i));
      v.push_back(Matrix::kronecker(id_l, mc.diff(j, i)));
    }
    grid.dims.push_back(std::move(dims));
    grid.horizontal.push_back(std::move(h));
    grid.vertical.push_back(std::move(v));
  }
  BoundedComplex total = total_complex(grid);
  std::vector<std::vector<Matrix>> actions;
  for (int t = total.lo(); t <= total.hi(); ++t) {
    std::vector<std::size_t> cells;
    for (int i = mc.internal_lo(); i <= mc.internal_hi(); ++i) {
      int j = t - i;
      if (j >= mc.lo() && j <= mc.hi()) cells.push_back(mc.term(j).dim(i));
    }
    actions.push_back(cell_actions(l, field, cells));
  }
  BGGComplex out{std::move(total), std::move(actions)};
  if (auto v = check_bgg(out)) throw InvariantViolation("bgg_complex: " + v->message);
  return out;
}

PeriodicBGG bgg_periodic(const PeriodicGradedComplex& pm) {
  require_polynomial(pm.algebra(), "bgg_periodic");
  if (auto v = validate(pm)) {
    throw InvalidInput("bgg_periodic: invalid periodic graded complex at degree " + std::to_string(v->degree) + ": " +
                       v->message);
  }
  const Field& field = pm.field();
  const int n = pm.period();
  const int ilo = pm.internal_lo(), ihi = pm.internal_hi();
  const LambdaDual l = lambda_dual(field, pm.algebra().generators);
  std::vector<BGGComplex> columns;
  for (int r = 0; r < n; ++r) columns.push_back(bgg_module(pm.term(r)));
  auto cell = [&](int i, int r) { return l.dim() * pm.term(r).dim(i); };
  auto offset = [&](int t, int i) {
    std::size_t off = 0;
    for (int e = ilo; e < i; ++e) off += cell(e, t - e);
    return off;
  };
  std::vector<std::size_t> dims;
  for (int t = 0; t < n; ++t) dims.push_back(offset(t, ihi + 1));
  const Matrix id_l = Matrix::identity(field, l.dim());
  std::vector<Matrix> diffs;
  std::vector<std::vector<Matrix>> actions;
  for (int t = 0; t < n; ++t) {
    Matrix d(field, dims[static_cast<std::size_t>(residue(t + 1, n))], dims[static_cast<std::size_t>(t)]);
    std::vector<std::size_t> cells;
    for (int i = ilo; i <= ihi; ++i) {
      const int r = residue(t - i, n);
      cells.push_back(pm.term(r).dim(i));
      if (i < ihi) d.add_block(offset(t + 1, i + 1), offset(t, i), columns[static_cast<std::size_t>(r)].complex.diff(i));
      d.add_block(offset(t + 1, i), offset(t, i), Matrix::kronecker(id_l, pm.diff(r, i)).scaled(sign(i)));
    }
    diffs.push_back(std::move(d));
    actions.push_back(cell_actions(l, field, cells));
  }
  PeriodicBGG out{PeriodicComplex(field, std::move(dims), std::move(diffs)), std::move(actions)};
  if (auto v = check_bgg(out)) throw InvariantViolation("bgg_periodic: " + v->message);
  return out;
}

std::optional<Violation> check_bgg(const BGGComplex& b) {
  if (auto v = validate(b.complex)) return v;
  if (b.complex.empty()) return std::nullopt;
  if (static_cast<int>(b.lambda_action.size()) != b.complex.hi() - b.complex.lo() + 1) {
    return Violation{b.complex.lo(), "Λ-action missing for some term"};
  }
  return check_lambda([&](int i) { return b.complex.diff(i); }, b.lambda_action, b.complex.lo(),
                      static_cast<int>(b.lambda_action.size()), false);
}

std::optional<Violation> check_bgg(const PeriodicBGG& b) {
  if (auto v = validate(b.complex)) return v;
  if (static_cast<int>(b.lambda_action.size()) != b.complex.period()) return Violation{0, "Λ-action missing for some term"};
  return check_lambda([&](int i) { return b.complex.diff(i); }, b.lambda_action, 0, b.complex.period(), true);
}

std::optional<std::vector<std::vector<int>>> find_sign_intertwiner(const PeriodicComplex& a, const PeriodicComplex& b) {
  if (a.period() != b.period() || a.dims() != b.dims() || !(a.field() == b.field())) return std::nullopt;
  const int n = a.period();
  std::vector<std::size_t> base(static_cast<std::size_t>(n) + 1, 0);
  for (int r = 0; r < n; ++r) base[static_cast<std::size_t>(r) + 1] = base[static_cast<std::size_t>(r)] + a.dim(r);
  // union-find with parity: sign(node) = sign(parent) * (-1)^parity
  std::vector<std::size_t> parent(base.back());
  std::vector<int> parity(base.back(), 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    int p = 0;
    while (parent[x] != x) {
      p ^= parity[x];
      x = parent[x];
    }
    return std::pair{x, p};
  };
  for (int r = 0; r < n; ++r) {
    const Matrix& da = a.diff(r);
    const Matrix& db = b.diff(r);
    const Matrix neg = db.scaled(-1);
    for (std::size_t row = 0; row < da.rows(); ++row) {
      for (std::size_t col = 0; col < da.cols(); ++col) {
        if (da.is_zero_at(row, col) && db.is_zero_at(row, col)) continue;
        int want;
        if (da.at(row, col) == db.at(row, col)) {
          want = 0;
        } else if (da.at(row, col) == neg.at(row, col)) {
          want = 1;
        } else {
          return std::nullopt;
        }
        // s(row in term r+1) * s(col in term r) = (-1)^want
        auto [x, px] = find(base[static_cast<std::size_t>(residue(r + 1, n))] + row);
        auto [y, py] = find(base[static_cast<std::size_t>(r)] + col);
        if (x == y) {
          if ((px ^ py) != want) return std::nullopt;
        } else {
          parent[x] = y;
          parity[x] = px ^ py ^ want;
        }
      }
    }
  }
  std::vector<std::vector<int>> signs;
  for (int r = 0; r < n; ++r) {
    std::vector<int> s;
    for (std::size_t k = 0; k < a.dim(r); ++k) s.push_back(find(base[static_cast<std::size_t>(r)] + k).second ? -1 : 1);
    signs.push_back(std::move(s));
  }
  return signs;
}

Reordering bgg_square_reordering(const GradedComplex& mc, int n) {
  if (n < 1) throw InvalidInput("period must be >= 1");
  const int c = mc.algebra().generators;
  const std::size_t ldim = std::size_t{1} << c;
  const int ilo = mc.internal_lo(), ihi = mc.internal_hi();
  Reordering perm;
  for (int r = 0; r < n; ++r) {
    TermLabels from, to;
    if (!mc.empty()) {
      // compress(Φ(mc)): total degree t ≡ r increasing, cells by increasing i, f major
      for (int t = ilo + mc.lo(); t <= ihi + mc.hi(); ++t) {
        if (residue(t, n) != r) continue;
        for (int i = ilo; i <= ihi; ++i) {
          int j = t - i;
          if (j < mc.lo() || j > mc.hi()) continue;
          for (std::size_t f = 0; f < ldim; ++f) {
            for (std::size_t m = 0; m < mc.term(j).dim(i); ++m) {
              from.push_back({i, j, static_cast<int>(f), static_cast<int>(m)});
            }
          }
        }
      }
      // Φ′(compress(mc)): cells by increasing i, f major, then summands M^j by increasing j
      for (int i = ilo; i <= ihi; ++i) {
        for (std::size_t f = 0; f < ldim; ++f) {
          for (int j = mc.lo(); j <= mc.hi(); ++j) {
            if (residue(i + j, n) != r) continue;
            for (std::size_t m = 0; m < mc.term(j).dim(i); ++m) {
              to.push_back({i, j, static_cast<int>(f), static_cast<int>(m)});
            }
          }
        }
      }
    }
    perm.push_back(match_labels(from, to));
  }
  return perm;
}

BGGSquareReport verify_bgg_square(const GradedComplex& mc, int n) {
  BGGSquareReport report;
  report.period = n;
  PeriodicComplex lhs = reorder(compress(bgg_complex(mc).complex, n), bgg_square_reordering(mc, n));
  PeriodicComplex rhs = bgg_periodic(compress(mc, n)).complex;
  report.term_dims = rhs.dims();
  if (lhs.dims() != rhs.dims()) {
    report.mismatched_entries = std::max(lhs.total_dim(), rhs.total_dim());
    return report;
  }
  for (int r = 0; r < n; ++r) {
    const Matrix& a = lhs.diff(r);
    const Matrix& b = rhs.diff(r);
    for (std::size_t row = 0; row < a.rows(); ++row) {
      for (std::size_t col = 0; col < a.cols(); ++col) {
        if (a.at(row, col) != b.at(row, col)) ++report.mismatched_entries;
      }
    }
  }
  report.equal = report.mismatched_entries == 0;
  if (!report.equal) report.signs = find_sign_intertwiner(lhs, rhs);
  return report;
}

}  // namespace perhom
