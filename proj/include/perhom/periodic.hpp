#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perhom/complex.hpp"
#include "perhom/matrix.hpp"
#include "perhom/reorder.hpp"

namespace perhom {

/// i mod n in [0, n).
inline int residue(int i, int n) { return ((i % n) + n) % n; }

/// An n-periodic complex: n terms with diff(i) : term i -> term (i + 1) mod n.
/// All accessors take arbitrary integer degrees and reduce them mod n.
class PeriodicComplex {
 public:
  PeriodicComplex(Field field, std::vector<std::size_t> dims, std::vector<Matrix> diffs);

  const Field& field() const { return field_; }
  int period() const { return static_cast<int>(dims_.size()); }
  std::size_t dim(int i) const { return dims_[static_cast<std::size_t>(residue(i, period()))]; }
  const Matrix& diff(int i) const { return diffs_[static_cast<std::size_t>(residue(i, period()))]; }
  std::size_t total_dim() const;

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& diffs() const { return diffs_; }

  friend bool operator==(const PeriodicComplex&, const PeriodicComplex&) = default;

 private:
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

class PeriodicChainMap {
 public:
  PeriodicChainMap(PeriodicComplex source, PeriodicComplex target, std::vector<Matrix> components);

  static PeriodicChainMap identity(const PeriodicComplex& x);
  static PeriodicChainMap zero(const PeriodicComplex& x, const PeriodicComplex& y);

  const PeriodicComplex& source() const { return source_; }
  const PeriodicComplex& target() const { return target_; }
  int period() const { return source_.period(); }
  const Matrix& component(int i) const {
    return components_[static_cast<std::size_t>(residue(i, period()))];
  }
  const std::vector<Matrix>& components() const { return components_; }

  friend bool operator==(const PeriodicChainMap&, const PeriodicChainMap&) = default;

 private:
  PeriodicComplex source_;
  PeriodicComplex target_;
  std::vector<Matrix> components_;
};

PeriodicChainMap compose(const PeriodicChainMap& g, const PeriodicChainMap& f);

/// sigma^i : X^i -> Y^{i-1} with f - g = sigma d + d sigma, sigma^i = sigma^{i+n}.
class PeriodicHomotopy {
 public:
  PeriodicHomotopy(PeriodicChainMap f, PeriodicChainMap g, std::vector<Matrix> components);

  const PeriodicChainMap& from() const { return f_; }
  const PeriodicChainMap& to() const { return g_; }
  const Matrix& component(int i) const {
    return components_[static_cast<std::size_t>(residue(i, f_.period()))];
  }
  const std::vector<Matrix>& components() const { return components_; }

 private:
  PeriodicChainMap f_;
  PeriodicChainMap g_;
  std::vector<Matrix> components_;
};

std::optional<Violation> validate(const PeriodicComplex& p);
std::optional<Violation> validate(const PeriodicChainMap& f);
std::optional<Violation> check_homotopy(const PeriodicHomotopy& h);
void require_valid(const PeriodicComplex& p, const char* what);
void require_valid(const PeriodicChainMap& f, const char* what);

/// Term r is ⊕_{j ≡ r mod n} X^j over the window of x, summands by increasing j.
PeriodicComplex compress(const BoundedComplex& x, int n);
/// Block-diagonal assembly of the components of f by residue class.
PeriodicChainMap compress_map(const ChainMap& f, int n);
PeriodicHomotopy compress_homotopy(const Homotopy& h, int n);

/// Unrolls p on [lo, hi]: term i is p^{i mod n}; nothing leaves degree hi.
BoundedComplex expand_window(const PeriodicComplex& p, int lo, int hi);

struct UnitSplitting {
  ChainMap unit;        // X -> expand_window(compress(X, n), lo, hi)
  ChainMap retraction;  // back onto the summand j = i
};

/// Requires lo <= x.lo() - n and hi >= x.hi() + n; throws InvalidInput otherwise.
UnitSplitting unit_and_retraction(const BoundedComplex& x, int n, int lo, int hi);

/// C(f)^i = X^{i+1} ⊕ Y^i with differential [[-d_X, 0], [f, d_Y]], indices mod n.
PeriodicComplex periodic_cone(const PeriodicChainMap& f);

/// Per-term basis permutations; perm[r][k] is the new position of basis vector k of term r.
using Reordering = std::vector<std::vector<std::size_t>>;
PeriodicComplex reorder(const PeriodicComplex& p, const Reordering& perm);

/// Carries the basis of compress(cone(f), n) onto that of
/// periodic_cone(compress_map(f, n)). Both sides list X-summands (labelled by
/// their original degree) before Y-summands; only the interleaving differs.
Reordering cone_compression_reordering(const ChainMap& f, int n);

/// dim H^i for i = 0 .. n-1.
std::vector<std::size_t> periodic_cohomology(const PeriodicComplex& p);
bool is_acyclic(const PeriodicComplex& p);

HomReport periodic_hom_dims(const PeriodicComplex& x, const PeriodicComplex& y);

std::optional<PeriodicHomotopy> find_periodic_homotopy(const PeriodicChainMap& f,
                                                       const PeriodicChainMap& g);

/// A homotopy s from id to 0 on expand_window(p, -1, n), imposed in degrees 0 .. n-1.
std::optional<Homotopy> unrolled_contraction(const PeriodicComplex& p);

/// Folds an unrolled contraction s into a periodic one:
///   sigma^0 = s^n d^{-1} s^0,   sigma^j = s^j for 1 <= j <= n-1.
/// Throws InvalidInput if s does not contract degrees 0 .. n-1 of
/// expand_window(p, -1, n), InvariantViolation if the output fails to contract p.
PeriodicHomotopy periodize_null_homotopy(const PeriodicComplex& p, const Homotopy& s);

/// Term i is p^{i+l}, differentials multiplied by (-1)^l.
PeriodicComplex shift_periodic(const PeriodicComplex& p, int l);

/// X[n] -> X(n), multiplying x in X^i by (-1)^{ni}.
ChainMap twist_iso(const BoundedComplex& x, int n);

/// Term r is rewritten in the basis given by the columns of bases[r]:
/// d'^r = bases[r+1]^{-1} d^r bases[r].
PeriodicComplex change_basis(const PeriodicComplex& p, const std::vector<Matrix>& bases);

}  // namespace perhom
