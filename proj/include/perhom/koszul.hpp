#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perhom/complex.hpp"
#include "perhom/gralg.hpp"
#include "perhom/periodic.hpp"

namespace perhom {

/// Λ* = Hom_k(Λ(c), k) with basis the dual monomials ξ_K^*, ordered by |K| and
/// then lexicographically; ξ_K^* sits in degree |K|. The left action is
/// (ξ_j f)(a) = (-1)^{|f|} f(ξ_j a).
struct LambdaDual {
  int c = 1;
  std::vector<std::vector<int>> basis;  // index sets K
  std::vector<int> degrees;             // |K| per basis vector
  std::vector<Matrix> action;           // ξ_j on all of Λ*

  std::size_t dim() const { return basis.size(); }
  std::vector<std::size_t> graded_dims() const;
};

/// Requires 1 <= c <= 6.
LambdaDual lambda_dual(const Field& field, int c);

/// A complex of Λ-modules; lambda_action[k][j] is ξ_j on the term of degree lo + k.
struct BGGComplex {
  BoundedComplex complex;
  std::vector<std::vector<Matrix>> lambda_action;
};

struct PeriodicBGG {
  PeriodicComplex complex;
  std::vector<std::vector<Matrix>> lambda_action;  // per residue
};

/// Term i is Λ*⊗M_i (basis f ⊗ m, f major); ∂(f⊗m) = (-1)^{|f|+i} Σ_j ξ_j f ⊗ x_j m.
/// Nothing leaves the top internal degree of M.
BGGComplex bgg_module(const GradedModule& m);

/// cells (i, j) with i in [lo_i, lo_i + dims.size() - 1], j likewise;
/// horizontal[a][b] : (i, j) -> (i+1, j), vertical[a][b] : (i, j) -> (i, j+1).
struct DoubleComplex {
  Field field;
  int lo_i = 0;
  int lo_j = 0;
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<Matrix>> horizontal;
  std::vector<std::vector<Matrix>> vertical;
};

/// Term l is ⊕_{i+j=l} cell(i, j) by increasing i; D = horizontal + (-1)^i vertical.
/// Throws InvalidInput if D² ≠ 0.
BoundedComplex total_complex(const DoubleComplex& grid);

/// Φ of a complex of graded S-modules: the total complex of the grid whose cell
/// (i, j) is Λ*⊗M^j_i, horizontal maps from bgg_module, vertical maps 1⊗d.
BGGComplex bgg_complex(const GradedComplex& mc);

/// Φ′: the same grid with j cyclic mod n.
PeriodicBGG bgg_periodic(const PeriodicGradedComplex& pm);

/// d² = 0 and ∂ ξ_j = ξ_j ∂ on every term.
std::optional<Violation> check_bgg(const BGGComplex& b);
std::optional<Violation> check_bgg(const PeriodicBGG& b);

/// Per-residue ±1 diagonal matrices s with s_{r+1} a_r = b_r s_r, if any exist.
std::optional<std::vector<std::vector<int>>> find_sign_intertwiner(const PeriodicComplex& a, const PeriodicComplex& b);

struct BGGSquareReport {
  int period = 1;
  std::vector<std::size_t> term_dims;
  bool equal = false;                 // entrywise after the canonical reordering
  std::size_t mismatched_entries = 0;
  std::optional<std::vector<std::vector<int>>> signs;  // set when only a ±1 rescaling matches
  bool holds() const { return equal || signs.has_value(); }
};

/// Compares compress(Φ(mc), n) with Φ′(compress(mc, n)).
BGGSquareReport verify_bgg_square(const GradedComplex& mc, int n);

/// Carries the basis of compress(Φ(mc), n) onto that of Φ′(compress(mc, n)).
Reordering bgg_square_reordering(const GradedComplex& mc, int n);

}  // namespace perhom
