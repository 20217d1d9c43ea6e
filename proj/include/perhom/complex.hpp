#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perhom/matrix.hpp"

namespace perhom {

/// First failure found by a validator: the offending degree and a description.
struct Violation {
  int degree = 0;
  std::string message;
};

/// A cochain complex of finite-dimensional vector spaces on the closed window
/// [lo, hi]; every term outside the window is zero. diff(i) maps degree i to
/// degree i + 1. Shapes are checked on construction, d∘d = 0 is not (see validate).
class BoundedComplex {
 public:
  /// The zero complex (empty window, lo > hi).
  explicit BoundedComplex(Field field) : field_(field) {}
  /// Window [lo, lo + dims.size() - 1]; diffs[k] is the map out of degree lo + k.
  BoundedComplex(Field field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs);

  /// k^dim placed in a single degree.
  static BoundedComplex concentrated(Field field, int degree, std::size_t dim = 1);

  const Field& field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }
  bool in_window(int i) const { return i >= lo() && i <= hi(); }

  std::size_t dim(int i) const;
  /// The differential out of degree i; a zero matrix of the right shape outside the window.
  Matrix diff(int i) const;
  /// Total dimension.
  std::size_t total_dim() const;
  long euler_characteristic() const;

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& diffs() const { return diffs_; }

  friend bool operator==(const BoundedComplex&, const BoundedComplex&);

 private:
  Field field_;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

/// Degree-zero map f^i : X^i -> Y^i. Components are stored for degrees
/// [lo, lo + size - 1] and are zero elsewhere.
class ChainMap {
 public:
  ChainMap(BoundedComplex source, BoundedComplex target, int lo, std::vector<Matrix> components);

  static ChainMap identity(const BoundedComplex& x);
  static ChainMap zero(const BoundedComplex& x, const BoundedComplex& y);

  const BoundedComplex& source() const { return source_; }
  const BoundedComplex& target() const { return target_; }
  const Field& field() const { return source_.field(); }
  Matrix component(int i) const;
  /// Smallest window containing every degree where source or target is nonzero.
  int lo() const;
  int hi() const;

  ChainMap scaled(long factor) const;
  friend ChainMap operator-(const ChainMap& f, const ChainMap& g);
  friend bool operator==(const ChainMap&, const ChainMap&);

 private:
  BoundedComplex source_;
  BoundedComplex target_;
  int lo_;
  std::vector<Matrix> components_;
};

/// g after f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// A family sigma^i : X^i -> Y^{i-1} witnessing f - g = sigma d + d sigma.
class Homotopy {
 public:
  Homotopy(ChainMap f, ChainMap g, int lo, std::vector<Matrix> components);

  const ChainMap& from() const { return f_; }
  const ChainMap& to() const { return g_; }
  Matrix component(int i) const;
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(components_.size()) - 1; }

 private:
  ChainMap f_;
  ChainMap g_;
  int lo_;
  std::vector<Matrix> components_;
};

std::optional<Violation> validate(const BoundedComplex& c);
std::optional<Violation> validate(const ChainMap& f);
/// Checks f^i - g^i = sigma^{i+1} d_X^i + d_Y^{i-1} sigma^i for lo <= i <= hi.
std::optional<Violation> check_homotopy(const Homotopy& h, int lo, int hi);
/// check_homotopy over the union window of source and target.
std::optional<Violation> check_homotopy(const Homotopy& h);

/// Throws InvalidInput carrying the violation.
void require_valid(const BoundedComplex& c, const char* what);
void require_valid(const ChainMap& f, const char* what);

/// X[l]^i = X^{i+l}, d_{X[l]} = (-1)^l d_X.
BoundedComplex shift(const BoundedComplex& c, int l);
/// X(l)^i = X^{i+l} with the differential left unsigned.
BoundedComplex regrade(const BoundedComplex& c, int l);

struct Cone {
  BoundedComplex complex;
  ChainMap inclusion;   // Y -> C(f), components (0, 1)^T
  ChainMap projection;  // C(f) -> X[1], components (1, 0)
};

/// C(f)^i = X^{i+1} ⊕ Y^i with differential [[-d_X, 0], [f, d_Y]].
Cone cone(const ChainMap& f);

/// (degree, dim H^degree) over the window of c.
std::vector<std::pair<int, std::size_t>> cohomology_dims(const BoundedComplex& c);
bool is_acyclic(const BoundedComplex& c);

/// Dimensions describing Hom in the homotopy category.
struct HomReport {
  std::size_t chain_maps = 0;     // dim Z: degree-0 maps commuting with d
  std::size_t null_homotopic = 0; // dim B: image of sigma -> d sigma + sigma d
  std::size_t hom_k() const { return chain_maps - null_homotopic; }
  friend bool operator==(const HomReport&, const HomReport&) = default;
};

HomReport hom_space_dims(const BoundedComplex& x, const BoundedComplex& y);

/// A basis of the space of chain maps x -> y.
std::vector<ChainMap> chain_map_basis(const BoundedComplex& x, const BoundedComplex& y);

/// A homotopy from f to 0 when one exists.
std::optional<Homotopy> find_null_homotopy(const ChainMap& f);
/// As above, but only the homotopy equations in degrees [lo, hi] are imposed.
/// Used on truncated windows, whose edge degrees cannot be contracted.
std::optional<Homotopy> find_null_homotopy(const ChainMap& f, int lo, int hi);

/// (X⊗Y)^l = ⊕_{i+j=l} X^i ⊗ Y^j, summands by increasing i, basis x_a ⊗ y_b
/// in Kronecker order; d(x⊗y) = dx⊗y + (-1)^i x⊗dy.
BoundedComplex tensor_complex(const BoundedComplex& x, const BoundedComplex& y);

}  // namespace perhom
