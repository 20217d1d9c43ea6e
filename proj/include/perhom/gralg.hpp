#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perhom/complex.hpp"
#include "perhom/periodic.hpp"
#include "perhom/reorder.hpp"

namespace perhom {

enum class AlgebraKind { Polynomial, Exterior };

/// S(c) = k[x_1..x_c] with deg x_j = 1, or Λ(c) on ξ_1..ξ_c with deg ξ_j = -1.
struct Algebra {
  AlgebraKind kind = AlgebraKind::Polynomial;
  int generators = 1;

  static Algebra poly(int c) { return {AlgebraKind::Polynomial, c}; }
  static Algebra ext(int c) { return {AlgebraKind::Exterior, c}; }
  int generator_degree() const { return kind == AlgebraKind::Polynomial ? 1 : -1; }
  std::string to_string() const;
  friend bool operator==(const Algebra&, const Algebra&) = default;
};

/// A graded module truncated to the internal-degree window [lo, hi].
/// action(j, i) is generator j acting from degree i to degree i + deg(generator);
/// it has zero rows when the target degree lies outside the window.
class GradedModule {
 public:
  /// actions[j][k] is generator j on degree lo + k.
  GradedModule(Field field, Algebra algebra, int lo, std::vector<std::size_t> dims,
               std::vector<std::vector<Matrix>> actions);
  /// The zero module on [lo, hi].
  static GradedModule zero(Field field, Algebra algebra, int lo, int hi);

  const Field& field() const { return field_; }
  const Algebra& algebra() const { return algebra_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_window(int i) const { return i >= lo() && i <= hi(); }
  std::size_t dim(int i) const;
  std::size_t total_dim() const;
  Matrix action(int j, int i) const;

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::vector<Matrix>>& actions() const { return actions_; }

  friend bool operator==(const GradedModule&, const GradedModule&) = default;

 private:
  Field field_;
  Algebra algebra_;
  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> actions_;
};

/// First failed relation: generators (first, second) composed at `degree`.
struct ModuleViolation {
  int first = 0;
  int second = 0;
  int degree = 0;
  std::string message;
};

/// S: x_j x_l = x_l x_j. Λ: ξ_j ξ_l = -ξ_l ξ_j and ξ_j² = 0. Checked wherever
/// both composites stay inside the window.
std::optional<ModuleViolation> validate_module(const GradedModule& m);
void require_valid(const GradedModule& m, const char* what);

/// Degreewise direct sum; all summands share field, algebra and window.
GradedModule direct_sum(const std::vector<GradedModule>& summands);
/// Rewrites degree i in the basis given by the columns of bases[i - lo].
GradedModule change_basis(const GradedModule& m, const std::vector<Matrix>& bases);

using Exponent = std::vector<int>;
/// Sum of coefficient * monomial.
using Polynomial = std::vector<std::pair<Exponent, long>>;

/// Subsets of {0..c-1} with l elements, each sorted, in lexicographic order.
std::vector<std::vector<int>> index_subsets(int c, int l);
/// Monomials of total degree d in c variables, lexicographically decreasing.
std::vector<Exponent> monomials(int c, int d);
/// Basis of ((S/I)(-shift))_degree: monomials of degree (degree - shift) outside I.
std::vector<Exponent> monomial_basis(int c, const std::vector<Exponent>& ideal, int shift, int degree);
/// (S/I)(-shift) over S(c) on [lo, hi], I generated by the given monomials.
GradedModule monomial_module(const Field& field, int c, const std::vector<Exponent>& ideal, int shift, int lo,
                             int hi);
/// Λ(c) as a module over itself, in degrees -c .. 0.
GradedModule exterior_algebra(const Field& field, int c);

/// Checks that the degreewise maps f_i : M_i -> N_i commute with every generator.
std::optional<ModuleViolation> check_module_map(const GradedModule& m, const GradedModule& n,
                                                const std::vector<Matrix>& f);

/// Multiplication by p from (S/I)(-a) to (S/J)(-b) on [lo, hi]. Every term of p must
/// have degree a - b. Throws InvalidInput if the result is not S-linear.
std::vector<Matrix> polynomial_map(const Field& field, int c, const std::vector<Exponent>& source_ideal,
                                   int source_shift, const std::vector<Exponent>& target_ideal, int target_shift,
                                   const Polynomial& p, int lo, int hi);

/// A bounded complex of graded modules sharing one internal window. The
/// differential d^j : M^j -> M^{j+1} is degree-preserving; diff(j, i) is its
/// component in internal degree i.
class GradedComplex {
 public:
  /// Empty complex over the given internal window.
  GradedComplex(Field field, Algebra algebra, int internal_lo, int internal_hi);
  /// diffs[k][t] is d out of homological degree lo + k in internal degree internal_lo + t.
  GradedComplex(int lo, std::vector<GradedModule> terms, std::vector<std::vector<Matrix>> diffs);
  static GradedComplex concentrated(const GradedModule& m, int degree = 0);

  const Field& field() const { return field_; }
  const Algebra& algebra() const { return algebra_; }
  int internal_lo() const { return internal_lo_; }
  int internal_hi() const { return internal_hi_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }
  /// The zero module outside the homological window.
  GradedModule term(int j) const;
  Matrix diff(int j, int i) const;

  const std::vector<GradedModule>& terms() const { return terms_; }
  const std::vector<std::vector<Matrix>>& diffs() const { return diffs_; }

  friend bool operator==(const GradedComplex&, const GradedComplex&) = default;

 private:
  Field field_;
  Algebra algebra_;
  int internal_lo_;
  int internal_hi_;
  int lo_ = 0;
  std::vector<GradedModule> terms_;
  std::vector<std::vector<Matrix>> diffs_;
};

/// n-periodic version: terms and differentials indexed mod n.
class PeriodicGradedComplex {
 public:
  PeriodicGradedComplex(std::vector<GradedModule> terms, std::vector<std::vector<Matrix>> diffs);

  const Field& field() const { return terms_.front().field(); }
  const Algebra& algebra() const { return terms_.front().algebra(); }
  int period() const { return static_cast<int>(terms_.size()); }
  int internal_lo() const { return terms_.front().lo(); }
  int internal_hi() const { return terms_.front().hi(); }
  const GradedModule& term(int j) const { return terms_[static_cast<std::size_t>(residue(j, period()))]; }
  const Matrix& diff(int j, int i) const;

  const std::vector<GradedModule>& terms() const { return terms_; }
  const std::vector<std::vector<Matrix>>& diffs() const { return diffs_; }

  friend bool operator==(const PeriodicGradedComplex&, const PeriodicGradedComplex&) = default;

 private:
  std::vector<GradedModule> terms_;
  std::vector<std::vector<Matrix>> diffs_;
};

/// Checks every term, linearity of every differential and d² = 0; degree is homological.
std::optional<Violation> validate(const GradedComplex& c);
std::optional<Violation> validate(const PeriodicGradedComplex& p);

/// Term r is ⊕_{j ≡ r mod n} M^j, summands by increasing j.
PeriodicGradedComplex compress(const GradedComplex& c, int n);

/// Finite projective flag: parts P_0..P_l and blocks[j][i] : P_j -> P_i for i < j.
struct FlagData {
  Field field;
  std::vector<std::size_t> parts;
  std::vector<std::vector<Matrix>> blocks;
  friend bool operator==(const FlagData&, const FlagData&) = default;
};

/// ⊕P_i with the strictly block-upper-triangular differential, as a period-1
/// complex. Throws InvalidInput on incoherent shapes or a differential with δ² ≠ 0.
PeriodicComplex flag_assemble(const FlagData& flag);

struct FlagStage {
  PeriodicComplex sub;                        // F^i = P_0 ⊕ .. ⊕ P_i
  std::optional<PeriodicChainMap> inclusion;  // F^{i-1} -> F^i, absent for i = 0
  PeriodicComplex subquotient;                // F^i / F^{i-1}, differential induced from F^i
};

std::vector<FlagStage> flag_filtration(const FlagData& flag);

/// X ⊠ Y over the base field: term i is ⊕_j X^j ⊗ Y^{i-j}, summands by
/// increasing j, Kronecker bases; d(x⊗y) = dx⊗y + (-1)^j x⊗dy.
PeriodicComplex tensor_periodic(const BoundedComplex& x, const PeriodicComplex& y);

/// Carries the basis of compress(tensor_complex(x, y), n) onto that of
/// tensor_periodic(x, compress(y, n)).
Reordering tensor_compression_reordering(const BoundedComplex& x, const BoundedComplex& y, int n);

}  // namespace perhom
