#include "perhom/random.hpp"

#include "perhom/linalg.hpp"

namespace perhom {

mpq_class random_scalar(Rng& rng, const Field& field) {
  if (field.is_rational()) return mpq_class(rng.uniform(-3, 3));
  return mpq_class(static_cast<unsigned long>(rng.next() % field.characteristic()));
}

Matrix random_matrix(Rng& rng, const Field& field, std::size_t rows, std::size_t cols) {
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, random_scalar(rng, field));
  }
  return m;
}

Matrix random_invertible(Rng& rng, const Field& field, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, field, n, n);
    if (rank(m) == n) return m;
  }
}

namespace {

// Number of k -> k pieces leaving each slot, chosen so that no slot exceeds its
// dimension. `next(k)` is the slot receiving the pieces leaving slot k.
std::vector<std::size_t> choose_pairs(Rng& rng, const std::vector<std::size_t>& dims, bool cyclic) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> used(n, 0), pairs(n, 0);
  std::size_t last = cyclic ? n : (n == 0 ? 0 : n - 1);
  for (std::size_t k = 0; k < last; ++k) {
    std::size_t to = (k + 1) % n;
    std::size_t room = std::min(dims[k] - used[k], dims[to] - used[to]);
    if (to == k) room = (dims[k] - used[k]) / 2;
    pairs[k] = room == 0 ? 0 : static_cast<std::size_t>(rng.uniform(0, static_cast<int>(room)));
    used[k] += pairs[k];
    used[to] += pairs[k];
  }
  return pairs;
}

// Differential in standard form: the p-th piece leaving slot k maps basis vector
// (offset of sources) + p to (offset of targets) + p. Sources of slot k are its
// first pairs[k] vectors; targets are placed after them.
Matrix standard_differential(const Field& field, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& pairs, std::size_t k, std::size_t to) {
  Matrix d(field, dims[to], dims[k]);
  std::size_t target_offset = pairs[to];
  if (to == k) target_offset = pairs[k];
  for (std::size_t p = 0; p < pairs[k]; ++p) d.set(target_offset + p, p, 1L);
  return d;
}

}  // namespace

BoundedComplex random_complex(Rng& rng, const Field& field, int max_dim, int max_window) {
  int length = rng.uniform(1, max_window);
  int lo = rng.uniform(-2, 2);
  std::vector<std::size_t> dims;
  for (int k = 0; k < length; ++k) dims.push_back(static_cast<std::size_t>(rng.uniform(0, max_dim)));
  std::vector<std::size_t> pairs = choose_pairs(rng, dims, false);
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    diffs.push_back(standard_differential(field, dims, pairs, k, k + 1));
  }
  return random_basis_change(rng, BoundedComplex(field, lo, dims, std::move(diffs)));
}

PeriodicComplex random_periodic_complex(Rng& rng, const Field& field, int n, int max_dim) {
  std::vector<std::size_t> dims;
  for (int k = 0; k < n; ++k) dims.push_back(static_cast<std::size_t>(rng.uniform(0, max_dim)));
  std::vector<std::size_t> pairs = choose_pairs(rng, dims, true);
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    diffs.push_back(standard_differential(field, dims, pairs, k, (k + 1) % dims.size()));
  }
  std::vector<Matrix> bases;
  for (auto d : dims) bases.push_back(random_invertible(rng, field, d));
  return change_basis(PeriodicComplex(field, dims, std::move(diffs)), bases);
}

ChainMap random_chain_map(Rng& rng, const BoundedComplex& x, const BoundedComplex& y) {
  ChainMap f = ChainMap::zero(x, y);
  auto basis = chain_map_basis(x, y);
  if (basis.empty()) return f;
  int lo = basis.front().lo(), hi = basis.front().hi();
  std::vector<mpq_class> coeffs;
  for (std::size_t k = 0; k < basis.size(); ++k) coeffs.push_back(random_scalar(rng, x.field()));
  std::vector<Matrix> comps;
  for (int i = lo; i <= hi; ++i) {
    Matrix c(x.field(), y.dim(i), x.dim(i));
    for (const auto& b : basis) c += b.component(i).scaled(coeffs[&b - basis.data()]);
    comps.push_back(std::move(c));
  }
  return ChainMap(x, y, lo, std::move(comps));
}

BoundedComplex random_basis_change(Rng& rng, const BoundedComplex& c) {
  std::vector<Matrix> bases;
  for (auto d : c.dims()) bases.push_back(random_invertible(rng, c.field(), d));
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k < c.diffs().size(); ++k) {
    diffs.push_back(inverse(bases[k + 1]) * c.diffs()[k] * bases[k]);
  }
  return BoundedComplex(c.field(), c.lo(), c.dims(), std::move(diffs));
}

}  // namespace perhom

namespace perhom {

namespace {

// Shifts a for which (S/I)(-a) has small pieces on [lo, hi].
int random_shift(Rng& rng, int c, int lo, int hi) {
  int span = c == 1 ? hi - lo : (c == 2 ? 3 : 2);
  return rng.uniform(std::max(lo, hi - span), hi);
}

std::vector<Exponent> random_ideal(Rng& rng, int c) {
  std::vector<Exponent> ideal;
  int gens = rng.uniform(0, 2);
  for (int g = 0; g < gens; ++g) {
    Exponent e(static_cast<std::size_t>(c), 0);
    int degree = rng.uniform(1, 2);
    for (int d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(rng.uniform(0, c - 1))];
    ideal.push_back(std::move(e));
  }
  return ideal;
}

Polynomial random_polynomial(Rng& rng, const Field& field, int c, int degree) {
  Polynomial p;
  for (const auto& m : monomials(c, degree)) {
    if (rng.uniform(0, 2) == 0) continue;
    long coeff = field.is_rational() ? rng.uniform(-2, 2) : rng.uniform(0, static_cast<int>(std::min<std::uint32_t>(field.characteristic(), 50)) - 1);
    if (coeff != 0) p.emplace_back(m, coeff);
  }
  return p;
}

std::vector<Matrix> random_graded_bases(Rng& rng, const GradedModule& m) {
  std::vector<Matrix> bases;
  for (auto d : m.dims()) bases.push_back(random_invertible(rng, m.field(), d));
  return bases;
}

// Consecutive terms of a complex of graded modules starting at homological degree `start`.
struct Piece {
  int start = 0;
  std::vector<GradedModule> terms;
  std::vector<std::vector<Matrix>> maps;
};

Piece koszul_piece(const Field& field, int c, int u, int v, int a, int lo, int hi) {
  Exponent xu(static_cast<std::size_t>(c), 0), xv(static_cast<std::size_t>(c), 0);
  xu[static_cast<std::size_t>(u)] = 1;
  xv[static_cast<std::size_t>(v)] = 1;
  auto k0 = monomial_module(field, c, {}, a, lo, hi);
  auto k1 = monomial_module(field, c, {}, a + 1, lo, hi);
  auto k2 = monomial_module(field, c, {}, a + 2, lo, hi);
  auto times_u = polynomial_map(field, c, {}, a + 1, {}, a, {{xu, 1}}, lo, hi);
  auto times_v = polynomial_map(field, c, {}, a + 1, {}, a, {{xv, 1}}, lo, hi);
  auto up_u = polynomial_map(field, c, {}, a + 2, {}, a + 1, {{xu, -1}}, lo, hi);
  auto up_v = polynomial_map(field, c, {}, a + 2, {}, a + 1, {{xv, 1}}, lo, hi);
  Piece piece;
  piece.terms = {k2, direct_sum({k1, k1}), k0};
  std::vector<Matrix> first, second;
  for (std::size_t t = 0; t < times_u.size(); ++t) {
    first.push_back(vstack(up_v[t], up_u[t]));
    second.push_back(hstack(times_u[t], times_v[t]));
  }
  piece.maps = {first, second};
  return piece;
}

}  // namespace

GradedModule random_graded_module(Rng& rng, const Field& field, int c, int lo, int hi) {
  std::vector<GradedModule> parts;
  int count = rng.uniform(1, 2);
  for (int k = 0; k < count; ++k) {
    parts.push_back(monomial_module(field, c, random_ideal(rng, c), random_shift(rng, c, lo, hi), lo, hi));
  }
  GradedModule m = direct_sum(parts);
  return change_basis(m, random_graded_bases(rng, m));
}

GradedComplex random_graded_complex(Rng& rng, const Field& field, int c, int lo, int hi, int length) {
  std::vector<Piece> pieces;
  int count = rng.uniform(1, 3);
  for (int k = 0; k < count; ++k) {
    int kind = rng.uniform(0, c >= 2 && length >= 3 ? 2 : (length >= 2 ? 1 : 0));
    Piece piece;
    if (kind == 0) {
      piece.terms = {monomial_module(field, c, random_ideal(rng, c), random_shift(rng, c, lo, hi), lo, hi)};
    } else if (kind == 1) {
      int b = random_shift(rng, c, lo, hi);
      int a = std::min(hi, b + rng.uniform(0, 1));
      auto target_ideal = random_ideal(rng, c);
      auto p = random_polynomial(rng, field, c, a - b);
      piece.terms = {monomial_module(field, c, {}, a, lo, hi), monomial_module(field, c, target_ideal, b, lo, hi)};
      piece.maps = {polynomial_map(field, c, {}, a, target_ideal, b, p, lo, hi)};
    } else {
      int u = rng.uniform(0, c - 2);
      int v = rng.uniform(u + 1, c - 1);
      piece = koszul_piece(field, c, u, v, rng.uniform(std::max(lo, hi - 3), hi), lo, hi);
    }
    piece.start = rng.uniform(0, length - static_cast<int>(piece.terms.size()));
    pieces.push_back(std::move(piece));
  }
  int top = 0;
  for (const auto& p : pieces) top = std::max(top, p.start + static_cast<int>(p.terms.size()) - 1);
  // assemble per homological degree, pieces in order
  std::vector<GradedModule> terms;
  for (int j = 0; j <= top; ++j) {
    std::vector<GradedModule> parts;
    for (const auto& p : pieces) {
      if (j >= p.start && j < p.start + static_cast<int>(p.terms.size())) parts.push_back(p.terms[static_cast<std::size_t>(j - p.start)]);
    }
    if (parts.empty()) parts.push_back(GradedModule::zero(field, Algebra::poly(c), lo, hi));
    terms.push_back(direct_sum(parts));
  }
  std::vector<std::vector<Matrix>> diffs;
  for (int j = 0; j < top; ++j) {
    std::vector<Matrix> per_degree;
    for (int i = lo; i <= hi; ++i) {
      Matrix d(field, terms[static_cast<std::size_t>(j + 1)].dim(i), terms[static_cast<std::size_t>(j)].dim(i));
      std::size_t row = 0, col = 0;
      for (const auto& p : pieces) {
        int end = p.start + static_cast<int>(p.terms.size());
        bool has_src = j >= p.start && j < end;
        bool has_dst = j + 1 >= p.start && j + 1 < end;
        if (has_src && has_dst) {
          d.set_block(row, col, p.maps[static_cast<std::size_t>(j - p.start)][static_cast<std::size_t>(i - lo)]);
        }
        if (has_dst) row += p.terms[static_cast<std::size_t>(j + 1 - p.start)].dim(i);
        if (has_src) col += p.terms[static_cast<std::size_t>(j - p.start)].dim(i);
      }
      per_degree.push_back(std::move(d));
    }
    diffs.push_back(std::move(per_degree));
  }
  // random bases: M^j_i -> columns of B[j][i]
  std::vector<std::vector<Matrix>> bases;
  std::vector<GradedModule> rebased;
  for (const auto& t : terms) {
    bases.push_back(random_graded_bases(rng, t));
    rebased.push_back(change_basis(t, bases.back()));
  }
  for (int j = 0; j < top; ++j) {
    for (int i = lo; i <= hi; ++i) {
      auto t = static_cast<std::size_t>(i - lo);
      auto& d = diffs[static_cast<std::size_t>(j)][t];
      d = inverse(bases[static_cast<std::size_t>(j + 1)][t]) * d * bases[static_cast<std::size_t>(j)][t];
    }
  }
  return GradedComplex(rng.uniform(-1, 1), std::move(rebased), std::move(diffs));
}

FlagData random_flag(Rng& rng, const Field& field, int parts, int max_dim) {
  std::vector<std::size_t> dims;
  for (int k = 0; k < parts; ++k) dims.push_back(static_cast<std::size_t>(rng.uniform(0, max_dim)));
  std::vector<std::size_t> off(dims.size() + 1, 0);
  for (std::size_t k = 0; k < dims.size(); ++k) off[k + 1] = off[k] + dims[k];
  const std::size_t total = off.back();
  std::vector<std::size_t> part_of(total);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    for (std::size_t v = off[k]; v < off[k + 1]; ++v) part_of[v] = k;
  }
  // each basis vector is used by at most one matching edge, so δ0 squares to zero
  Matrix d0(field, total, total);
  std::vector<bool> used(total, false);
  for (std::size_t attempt = 0; attempt < total; ++attempt) {
    if (total < 2) break;
    auto s = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(total) - 1));
    auto t = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(total) - 1));
    if (used[s] || used[t] || part_of[t] >= part_of[s]) continue;
    used[s] = used[t] = true;
    d0.set(t, s, 1L);
  }
  Matrix b(field, total, total);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    b.set_block(off[k], off[k], random_invertible(rng, field, dims[k]));
    for (std::size_t l = k + 1; l < dims.size(); ++l) {
      b.set_block(off[k], off[l], random_matrix(rng, field, dims[k], dims[l]));
    }
  }
  Matrix d = b * d0 * inverse(b);
  FlagData flag{field, dims, {}};
  for (std::size_t j = 0; j < dims.size(); ++j) {
    std::vector<Matrix> row;
    for (std::size_t i = 0; i < j; ++i) row.push_back(d.block(off[i], off[j], dims[i], dims[j]));
    flag.blocks.push_back(std::move(row));
  }
  return flag;
}

}  // namespace perhom
