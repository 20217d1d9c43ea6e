#include "perhom/gralg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "perhom/errors.hpp"
#include "perhom/linalg.hpp"

namespace perhom {

namespace {

long sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

std::string degree_text(int i) { return std::to_string(i); }

bool divides(const Exponent& g, const Exponent& m) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] > m[k]) return false;
  }
  return true;
}

bool in_ideal(const std::vector<Exponent>& ideal, const Exponent& m) {
  return std::any_of(ideal.begin(), ideal.end(), [&](const Exponent& g) { return divides(g, m); });
}

std::map<Exponent, std::size_t> index_of(const std::vector<Exponent>& basis) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = k;
  return idx;
}

void check_exponents(int c, const std::vector<Exponent>& ideal) {
  for (const auto& g : ideal) {
    if (static_cast<int>(g.size()) != c) throw InvalidInput("monomial has the wrong number of variables");
    for (int e : g) {
      if (e < 0) throw InvalidInput("monomial has a negative exponent");
    }
  }
}

}  // namespace

std::string Algebra::to_string() const {
  return (kind == AlgebraKind::Polynomial ? "S(" : "Λ(") + std::to_string(generators) + ")";
}

// ------------------------------------------------------------ graded modules

GradedModule::GradedModule(Field field, Algebra algebra, int lo, std::vector<std::size_t> dims,
                           std::vector<std::vector<Matrix>> actions)
    : field_(field), algebra_(algebra), lo_(lo), dims_(std::move(dims)), actions_(std::move(actions)) {
  if (algebra_.generators < 1) throw InvalidInput("algebra needs at least one generator");
  if (static_cast<int>(actions_.size()) != algebra_.generators) {
    throw DimensionMismatch("graded module: expected one action list per generator");
  }
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    if (actions_[j].size() != dims_.size()) {
      throw DimensionMismatch("graded module: generator " + std::to_string(j) + " needs one matrix per degree");
    }
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      int i = lo_ + static_cast<int>(k);
      const Matrix& a = actions_[j][k];
      require_same_field(field_, a.field(), "graded module");
      if (a.rows() != dim(i + algebra_.generator_degree()) || a.cols() != dims_[k]) {
        throw DimensionMismatch("graded module: action of generator " + std::to_string(j) + " at degree " +
                                degree_text(i) + " has the wrong shape");
      }
    }
  }
}

GradedModule GradedModule::zero(Field field, Algebra algebra, int lo, int hi) {
  std::size_t len = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
  std::vector<std::vector<Matrix>> actions(static_cast<std::size_t>(algebra.generators),
                                           std::vector<Matrix>(len, Matrix(field, 0, 0)));
  return GradedModule(field, algebra, lo, std::vector<std::size_t>(len, 0), std::move(actions));
}

std::size_t GradedModule::dim(int i) const { return in_window(i) ? dims_[static_cast<std::size_t>(i - lo_)] : 0; }

std::size_t GradedModule::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

Matrix GradedModule::action(int j, int i) const {
  if (in_window(i)) return actions_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i - lo_)];
  return Matrix(field_, dim(i + algebra_.generator_degree()), 0);
}

std::optional<ModuleViolation> validate_module(const GradedModule& m) {
  const int c = m.algebra().generators;
  const int g = m.algebra().generator_degree();
  const bool exterior = m.algebra().kind == AlgebraKind::Exterior;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    if (!m.in_window(i + 2 * g)) continue;
    for (int j = 0; j < c; ++j) {
      for (int l = j; l < c; ++l) {
        Matrix jl = m.action(j, i + g) * m.action(l, i);
        Matrix lj = m.action(l, i + g) * m.action(j, i);
        if (exterior && j == l && !jl.is_zero()) {
          return ModuleViolation{j, l, i, "generator " + std::to_string(j) + " does not square to zero at degree " +
                                              degree_text(i)};
        }
        if (j == l) continue;
        if (exterior ? !(jl + lj).is_zero() : !(jl == lj)) {
          return ModuleViolation{j, l, i,
                                 std::string("generators ") + std::to_string(j) + " and " + std::to_string(l) +
                                     (exterior ? " do not anticommute" : " do not commute") + " at degree " +
                                     degree_text(i)};
        }
      }
    }
  }
  return std::nullopt;
}

void require_valid(const GradedModule& m, const char* what) {
  if (auto v = validate_module(m)) throw InvalidInput(std::string(what) + ": invalid module: " + v->message);
}

GradedModule direct_sum(const std::vector<GradedModule>& summands) {
  if (summands.empty()) throw InvalidInput("direct_sum: no summands");
  const GradedModule& first = summands.front();
  for (const auto& s : summands) {
    require_same_field(first.field(), s.field(), "direct_sum");
    if (!(s.algebra() == first.algebra()) || s.lo() != first.lo() || s.hi() != first.hi()) {
      throw InvalidInput("direct_sum: summands must share algebra and window");
    }
  }
  std::vector<std::size_t> dims;
  for (int i = first.lo(); i <= first.hi(); ++i) {
    std::size_t d = 0;
    for (const auto& s : summands) d += s.dim(i);
    dims.push_back(d);
  }
  std::vector<std::vector<Matrix>> actions;
  for (int j = 0; j < first.algebra().generators; ++j) {
    std::vector<Matrix> per_degree;
    for (int i = first.lo(); i <= first.hi(); ++i) {
      std::vector<Matrix> blocks;
      for (const auto& s : summands) blocks.push_back(s.action(j, i));
      per_degree.push_back(Matrix::direct_sum(blocks));
    }
    actions.push_back(std::move(per_degree));
  }
  return GradedModule(first.field(), first.algebra(), first.lo(), std::move(dims), std::move(actions));
}

GradedModule change_basis(const GradedModule& m, const std::vector<Matrix>& bases) {
  if (bases.size() != m.dims().size()) throw DimensionMismatch("change_basis: one basis per degree");
  auto basis_at = [&](int i) -> Matrix {
    return m.in_window(i) ? bases[static_cast<std::size_t>(i - m.lo())] : Matrix(m.field(), 0, 0);
  };
  std::vector<std::vector<Matrix>> actions;
  for (int j = 0; j < m.algebra().generators; ++j) {
    std::vector<Matrix> per_degree;
    for (int i = m.lo(); i <= m.hi(); ++i) {
      int t = i + m.algebra().generator_degree();
      Matrix a = m.action(j, i);
      per_degree.push_back(m.in_window(t) ? inverse(basis_at(t)) * a * basis_at(i) : a);
    }
    actions.push_back(std::move(per_degree));
  }
  return GradedModule(m.field(), m.algebra(), m.lo(), m.dims(), std::move(actions));
}

std::vector<std::vector<int>> index_subsets(int c, int l) {
  std::vector<std::vector<int>> out;
  if (l < 0 || l > c) return out;
  std::vector<int> current(static_cast<std::size_t>(l));
  std::iota(current.begin(), current.end(), 0);
  for (;;) {
    out.push_back(current);
    int k = l - 1;
    while (k >= 0 && current[static_cast<std::size_t>(k)] == c - l + k) --k;
    if (k < 0) break;
    ++current[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < l; ++t) current[static_cast<std::size_t>(t)] = current[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

std::vector<Exponent> monomials(int c, int d) {
  if (d < 0) return {};
  if (c == 0) return d == 0 ? std::vector<Exponent>{Exponent{}} : std::vector<Exponent>{};
  std::vector<Exponent> out;
  for (int e = d; e >= 0; --e) {
    for (auto rest : monomials(c - 1, d - e)) {
      rest.insert(rest.begin(), e);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

std::vector<Exponent> monomial_basis(int c, const std::vector<Exponent>& ideal, int shift, int degree) {
  std::vector<Exponent> out;
  for (auto& m : monomials(c, degree - shift)) {
    if (!in_ideal(ideal, m)) out.push_back(std::move(m));
  }
  return out;
}

GradedModule monomial_module(const Field& field, int c, const std::vector<Exponent>& ideal, int shift, int lo,
                             int hi) {
  if (c < 1) throw InvalidInput("monomial_module: need at least one variable");
  check_exponents(c, ideal);
  std::vector<std::vector<Exponent>> bases;
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) {
    bases.push_back(monomial_basis(c, ideal, shift, i));
    dims.push_back(bases.back().size());
  }
  std::vector<std::vector<Matrix>> actions(static_cast<std::size_t>(c));
  for (int i = lo; i <= hi; ++i) {
    auto k = static_cast<std::size_t>(i - lo);
    const auto& src = bases[k];
    std::size_t rows = i < hi ? bases[k + 1].size() : 0;
    auto target = i < hi ? index_of(bases[k + 1]) : std::map<Exponent, std::size_t>{};
    for (int j = 0; j < c; ++j) {
      Matrix a(field, rows, src.size());
      for (std::size_t b = 0; b < src.size(); ++b) {
        Exponent m = src[b];
        ++m[static_cast<std::size_t>(j)];
        if (auto it = target.find(m); it != target.end()) a.set(it->second, b, 1L);
      }
      actions[static_cast<std::size_t>(j)].push_back(std::move(a));
    }
  }
  return GradedModule(field, Algebra::poly(c), lo, std::move(dims), std::move(actions));
}

GradedModule exterior_algebra(const Field& field, int c) {
  if (c < 1) throw InvalidInput("exterior_algebra: need at least one generator");
  // degree -l holds the products ξ_K with |K| = l
  std::vector<std::size_t> dims;
  for (int i = -c; i <= 0; ++i) dims.push_back(index_subsets(c, -i).size());
  std::vector<std::vector<Matrix>> actions(static_cast<std::size_t>(c));
  for (int i = -c; i <= 0; ++i) {
    auto src = index_subsets(c, -i);
    auto dst = index_subsets(c, -i + 1);
    std::map<std::vector<int>, std::size_t> where;
    for (std::size_t k = 0; k < dst.size(); ++k) where[dst[k]] = k;
    for (int j = 0; j < c; ++j) {
      Matrix a(field, i > -c ? dst.size() : 0, src.size());
      for (std::size_t b = 0; b < src.size() && i > -c; ++b) {
        const auto& k = src[b];
        if (std::find(k.begin(), k.end(), j) != k.end()) continue;
        auto before = std::count_if(k.begin(), k.end(), [j](int t) { return t < j; });
        auto u = k;
        u.insert(std::upper_bound(u.begin(), u.end(), j), j);
        a.set(where.at(u), b, sign(before));
      }
      actions[static_cast<std::size_t>(j)].push_back(std::move(a));
    }
  }
  return GradedModule(field, Algebra::ext(c), -c, std::move(dims), std::move(actions));
}

std::optional<ModuleViolation> check_module_map(const GradedModule& m, const GradedModule& n,
                                                const std::vector<Matrix>& f) {
  require_same_field(m.field(), n.field(), "module map");
  if (!(m.algebra() == n.algebra()) || m.lo() != n.lo() || m.hi() != n.hi()) {
    throw InvalidInput("module map: modules must share algebra and window");
  }
  if (f.size() != m.dims().size()) throw DimensionMismatch("module map: one matrix per degree");
  const int g = m.algebra().generator_degree();
  for (int i = m.lo(); i <= m.hi(); ++i) {
    auto k = static_cast<std::size_t>(i - m.lo());
    if (f[k].rows() != n.dim(i) || f[k].cols() != m.dim(i)) {
      return ModuleViolation{0, 0, i, "map has the wrong shape at degree " + degree_text(i)};
    }
  }
  for (int i = m.lo(); i <= m.hi(); ++i) {
    if (!m.in_window(i + g)) continue;
    auto k = static_cast<std::size_t>(i - m.lo());
    auto t = static_cast<std::size_t>(i + g - m.lo());
    for (int j = 0; j < m.algebra().generators; ++j) {
      if (!(n.action(j, i) * f[k] == f[t] * m.action(j, i))) {
        return ModuleViolation{j, j, i,
                               "map does not commute with generator " + std::to_string(j) + " at degree " +
                                   degree_text(i)};
      }
    }
  }
  return std::nullopt;
}

std::vector<Matrix> polynomial_map(const Field& field, int c, const std::vector<Exponent>& source_ideal,
                                   int source_shift, const std::vector<Exponent>& target_ideal, int target_shift,
                                   const Polynomial& p, int lo, int hi) {
  check_exponents(c, source_ideal);
  check_exponents(c, target_ideal);
  for (const auto& [e, coeff] : p) {
    check_exponents(c, {e});
    if (std::accumulate(e.begin(), e.end(), 0) != source_shift - target_shift) {
      throw InvalidInput("polynomial_map: every term must have degree " +
                         std::to_string(source_shift - target_shift));
    }
  }
  std::vector<Matrix> out;
  for (int i = lo; i <= hi; ++i) {
    auto src = monomial_basis(c, source_ideal, source_shift, i);
    auto dst = monomial_basis(c, target_ideal, target_shift, i);
    auto where = index_of(dst);
    Matrix m(field, dst.size(), src.size());
    for (std::size_t b = 0; b < src.size(); ++b) {
      for (const auto& [e, coeff] : p) {
        Exponent prod = src[b];
        for (std::size_t v = 0; v < prod.size(); ++v) prod[v] += e[v];
        if (auto it = where.find(prod); it != where.end()) {
          m.set(it->second, b, m.at(it->second, b) + coeff);
        }
      }
    }
    out.push_back(std::move(m));
  }
  auto source = monomial_module(field, c, source_ideal, source_shift, lo, hi);
  auto target = monomial_module(field, c, target_ideal, target_shift, lo, hi);
  if (auto v = check_module_map(source, target, out)) throw InvalidInput("polynomial_map: " + v->message);
  return out;
}

// ------------------------------------------------------------ graded complexes

GradedComplex::GradedComplex(Field field, Algebra algebra, int internal_lo, int internal_hi)
    : field_(field), algebra_(algebra), internal_lo_(internal_lo), internal_hi_(internal_hi) {}

GradedComplex::GradedComplex(int lo, std::vector<GradedModule> terms, std::vector<std::vector<Matrix>> diffs)
    : field_(terms.empty() ? throw InvalidInput("graded complex: no terms") : terms.front().field()),
      algebra_(terms.front().algebra()),
      internal_lo_(terms.front().lo()),
      internal_hi_(terms.front().hi()),
      lo_(lo),
      terms_(std::move(terms)),
      diffs_(std::move(diffs)) {
  for (const auto& t : terms_) {
    require_same_field(field_, t.field(), "graded complex");
    if (!(t.algebra() == algebra_) || t.lo() != internal_lo_ || t.hi() != internal_hi_) {
      throw InvalidInput("graded complex: terms must share algebra and internal window");
    }
  }
  if (diffs_.size() + 1 != terms_.size()) {
    throw DimensionMismatch("graded complex: expected " + std::to_string(terms_.size() - 1) + " differentials");
  }
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    if (diffs_[k].size() != terms_[k].dims().size()) {
      throw DimensionMismatch("graded complex: differential needs one matrix per internal degree");
    }
    for (int i = internal_lo_; i <= internal_hi_; ++i) {
      const Matrix& d = diffs_[k][static_cast<std::size_t>(i - internal_lo_)];
      require_same_field(field_, d.field(), "graded complex");
      if (d.rows() != terms_[k + 1].dim(i) || d.cols() != terms_[k].dim(i)) {
        throw DimensionMismatch("graded complex: differential out of degree " +
                                std::to_string(lo_ + static_cast<int>(k)) + " has the wrong shape at internal degree " +
                                degree_text(i));
      }
    }
  }
}

GradedComplex GradedComplex::concentrated(const GradedModule& m, int degree) { return GradedComplex(degree, {m}, {}); }

GradedModule GradedComplex::term(int j) const {
  if (j >= lo() && j <= hi()) return terms_[static_cast<std::size_t>(j - lo_)];
  return GradedModule::zero(field_, algebra_, internal_lo_, internal_hi_);
}

Matrix GradedComplex::diff(int j, int i) const {
  if (j >= lo() && j < hi() && i >= internal_lo_ && i <= internal_hi_) {
    return diffs_[static_cast<std::size_t>(j - lo_)][static_cast<std::size_t>(i - internal_lo_)];
  }
  return Matrix(field_, term(j + 1).dim(i), term(j).dim(i));
}

PeriodicGradedComplex::PeriodicGradedComplex(std::vector<GradedModule> terms, std::vector<std::vector<Matrix>> diffs)
    : terms_(std::move(terms)), diffs_(std::move(diffs)) {
  if (terms_.empty()) throw InvalidInput("periodic graded complex: period must be >= 1");
  if (diffs_.size() != terms_.size()) throw DimensionMismatch("periodic graded complex: one differential per term");
  const GradedModule& first = terms_.front();
  for (const auto& t : terms_) {
    require_same_field(first.field(), t.field(), "periodic graded complex");
    if (!(t.algebra() == first.algebra()) || t.lo() != first.lo() || t.hi() != first.hi()) {
      throw InvalidInput("periodic graded complex: terms must share algebra and internal window");
    }
  }
  for (int r = 0; r < period(); ++r) {
    const auto& ds = diffs_[static_cast<std::size_t>(r)];
    if (ds.size() != first.dims().size()) {
      throw DimensionMismatch("periodic graded complex: differential needs one matrix per internal degree");
    }
    for (int i = first.lo(); i <= first.hi(); ++i) {
      const Matrix& d = ds[static_cast<std::size_t>(i - first.lo())];
      if (d.rows() != term(r + 1).dim(i) || d.cols() != term(r).dim(i)) {
        throw DimensionMismatch("periodic graded complex: differential out of term " + std::to_string(r) +
                                " has the wrong shape at internal degree " + degree_text(i));
      }
    }
  }
}

const Matrix& PeriodicGradedComplex::diff(int j, int i) const {
  return diffs_[static_cast<std::size_t>(residue(j, period()))][static_cast<std::size_t>(i - internal_lo())];
}

namespace {

template <typename C>
std::optional<Violation> validate_graded(const C& c, int lo, int hi) {
  for (int j = lo; j <= hi; ++j) {
    if (auto v = validate_module(c.term(j))) return Violation{j, "term: " + v->message};
  }
  for (int j = lo; j <= hi; ++j) {
    std::vector<Matrix> d, dd;
    for (int i = c.internal_lo(); i <= c.internal_hi(); ++i) {
      d.push_back(c.diff(j, i));
      dd.push_back(c.diff(j + 1, i) * c.diff(j, i));
    }
    if (auto v = check_module_map(c.term(j), c.term(j + 1), d)) return Violation{j, "differential: " + v->message};
    for (std::size_t k = 0; k < dd.size(); ++k) {
      if (!dd[k].is_zero()) {
        return Violation{j, "d∘d != 0 at internal degree " + degree_text(c.internal_lo() + static_cast<int>(k))};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const GradedComplex& c) {
  if (c.empty()) return std::nullopt;
  return validate_graded(c, c.lo(), c.hi());
}

std::optional<Violation> validate(const PeriodicGradedComplex& p) { return validate_graded(p, 0, p.period() - 1); }

PeriodicGradedComplex compress(const GradedComplex& c, int n) {
  if (n < 1) throw InvalidInput("period must be >= 1");
  if (auto v = validate(c)) throw InvalidInput("compress: invalid graded complex at degree " + std::to_string(v->degree) + ": " + v->message);
  std::vector<GradedModule> terms;
  for (int r = 0; r < n; ++r) {
    std::vector<GradedModule> parts;
    for (int j = c.lo(); j <= c.hi() && !c.empty(); ++j) {
      if (residue(j, n) == r) parts.push_back(c.term(j));
    }
    if (parts.empty()) parts.push_back(GradedModule::zero(c.field(), c.algebra(), c.internal_lo(), c.internal_hi()));
    terms.push_back(direct_sum(parts));
  }
  // offset of M^j inside its residue class at internal degree i
  auto offset = [&](int j, int i) {
    std::size_t off = 0;
    for (int a = j - n; a >= c.lo(); a -= n) off += c.term(a).dim(i);
    return off;
  };
  std::vector<std::vector<Matrix>> diffs;
  for (int r = 0; r < n; ++r) {
    std::vector<Matrix> per_degree;
    for (int i = c.internal_lo(); i <= c.internal_hi(); ++i) {
      Matrix d(c.field(), terms[static_cast<std::size_t>(residue(r + 1, n))].dim(i),
               terms[static_cast<std::size_t>(r)].dim(i));
      for (int j = c.lo(); j < c.hi() && !c.empty(); ++j) {
        if (residue(j, n) == r) d.add_block(offset(j + 1, i), offset(j, i), c.diff(j, i));
      }
      per_degree.push_back(std::move(d));
    }
    diffs.push_back(std::move(per_degree));
  }
  return PeriodicGradedComplex(std::move(terms), std::move(diffs));
}

// ------------------------------------------------------------------- flags

namespace {

std::vector<std::size_t> part_offsets(const FlagData& flag) {
  std::vector<std::size_t> off(flag.parts.size() + 1, 0);
  for (std::size_t i = 0; i < flag.parts.size(); ++i) off[i + 1] = off[i] + flag.parts[i];
  return off;
}

Matrix assembled_differential(const FlagData& flag) {
  if (flag.parts.empty()) throw InvalidInput("flag: needs at least one part");
  if (flag.blocks.size() != flag.parts.size()) throw DimensionMismatch("flag: blocks[j] needed for every part j");
  auto off = part_offsets(flag);
  Matrix d(flag.field, off.back(), off.back());
  for (std::size_t j = 0; j < flag.parts.size(); ++j) {
    if (flag.blocks[j].size() != j) {
      throw DimensionMismatch("flag: part " + std::to_string(j) + " needs " + std::to_string(j) + " blocks");
    }
    for (std::size_t i = 0; i < j; ++i) {
      const Matrix& b = flag.blocks[j][i];
      require_same_field(flag.field, b.field(), "flag");
      if (b.rows() != flag.parts[i] || b.cols() != flag.parts[j]) {
        throw DimensionMismatch("flag: block " + std::to_string(j) + "->" + std::to_string(i) + " has the wrong shape");
      }
      d.set_block(off[i], off[j], b);
    }
  }
  return d;
}

}  // namespace

PeriodicComplex flag_assemble(const FlagData& flag) {
  Matrix d = assembled_differential(flag);
  if (!(d * d).is_zero()) throw InvalidInput("flag: assembled differential does not square to zero");
  std::size_t total = d.rows();
  return PeriodicComplex(flag.field, {total}, {std::move(d)});
}

std::vector<FlagStage> flag_filtration(const FlagData& flag) {
  const Matrix d = flag_assemble(flag).diff(0);
  auto off = part_offsets(flag);
  std::vector<FlagStage> stages;
  for (std::size_t i = 0; i < flag.parts.size(); ++i) {
    std::size_t size = off[i + 1];
    PeriodicComplex sub(flag.field, {size}, {d.block(0, 0, size, size)});
    std::optional<PeriodicChainMap> inclusion;
    if (i > 0) {
      const PeriodicComplex& prev = stages.back().sub;
      Matrix in(flag.field, size, off[i]);
      in.set_block(0, 0, Matrix::identity(flag.field, off[i]));
      inclusion = PeriodicChainMap(prev, sub, {std::move(in)});
    }
    // F^i / F^{i-1} has basis P_i; its differential is the P_i -> P_i corner of d restricted to F^i.
    Matrix induced = sub.diff(0).block(off[i], off[i], flag.parts[i], flag.parts[i]);
    PeriodicComplex quotient(flag.field, {flag.parts[i]}, {std::move(induced)});
    stages.push_back(FlagStage{std::move(sub), std::move(inclusion), std::move(quotient)});
  }
  return stages;
}

// ------------------------------------------------------------------ tensor

PeriodicComplex tensor_periodic(const BoundedComplex& x, const PeriodicComplex& y) {
  require_same_field(x.field(), y.field(), "tensor_periodic");
  require_valid(x, "tensor_periodic");
  require_valid(y, "tensor_periodic");
  const int n = y.period();
  auto offset = [&](int t, int j) {
    std::size_t off = 0;
    for (int a = x.lo(); a < j; ++a) off += x.dim(a) * y.dim(t - a);
    return off;
  };
  std::vector<std::size_t> dims;
  for (int t = 0; t < n; ++t) dims.push_back(x.empty() ? 0 : offset(t, x.hi() + 1));
  std::vector<Matrix> diffs;
  for (int t = 0; t < n; ++t) {
    Matrix d(x.field(), dims[static_cast<std::size_t>(residue(t + 1, n))], dims[static_cast<std::size_t>(t)]);
    for (int j = x.lo(); j <= x.hi() && !x.empty(); ++j) {
      const int r = t - j;
      if (j < x.hi()) {
        d.add_block(offset(t + 1, j + 1), offset(t, j),
                    Matrix::kronecker(x.diff(j), Matrix::identity(x.field(), y.dim(r))));
      }
      d.add_block(offset(t + 1, j), offset(t, j),
                  Matrix::kronecker(Matrix::identity(x.field(), x.dim(j)), y.diff(r)).scaled(sign(j)));
    }
    diffs.push_back(std::move(d));
  }
  return PeriodicComplex(x.field(), std::move(dims), std::move(diffs));
}

Reordering tensor_compression_reordering(const BoundedComplex& x, const BoundedComplex& y, int n) {
  if (n < 1) throw InvalidInput("period must be >= 1");
  Reordering perm;
  for (int r = 0; r < n; ++r) {
    // compress(X⊗Y): total degree l ≡ r increasing, then i increasing
    std::vector<std::pair<int, int>> cells;
    for (int i = x.lo(); i <= x.hi() && !x.empty(); ++i) {
      for (int j = y.lo(); j <= y.hi() && !y.empty(); ++j) {
        if (residue(i + j, n) == r) cells.emplace_back(i + j, i);
      }
    }
    std::sort(cells.begin(), cells.end());
    TermLabels from;
    for (auto [l, i] : cells) {
      int j = l - i;
      for (std::size_t a = 0; a < x.dim(i); ++a) {
        for (std::size_t b = 0; b < y.dim(j); ++b) from.push_back({i, j, static_cast<int>(a), static_cast<int>(b)});
      }
    }
    // X ⊠ ΔY: i increasing, then x-basis, then the ΔY summands by increasing j
    TermLabels to;
    for (int i = x.lo(); i <= x.hi() && !x.empty(); ++i) {
      for (std::size_t a = 0; a < x.dim(i); ++a) {
        for (int j = y.lo(); j <= y.hi() && !y.empty(); ++j) {
          if (residue(i + j, n) != r) continue;
          for (std::size_t b = 0; b < y.dim(j); ++b) to.push_back({i, j, static_cast<int>(a), static_cast<int>(b)});
        }
      }
    }
    perm.push_back(match_labels(from, to));
  }
  return perm;
}

}  // namespace perhom
