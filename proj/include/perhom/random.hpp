#pragma once

#include <cstdint>
#include <random>

#include "perhom/complex.hpp"
#include "perhom/gralg.hpp"
#include "perhom/periodic.hpp"

namespace perhom {

/// Seeded generator. Draws are reduced by plain modulo so that sequences are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return next() % 2 == 0; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform over F_p; integers in [-3, 3] over the rationals.
mpq_class random_scalar(Rng& rng, const Field& field);
Matrix random_matrix(Rng& rng, const Field& field, std::size_t rows, std::size_t cols);
Matrix random_invertible(Rng& rng, const Field& field, std::size_t n);

/// A random bounded complex with window length in [1, max_window] and term
/// dimensions <= max_dim: a direct sum of copies of k and of k -> k, written in
/// random bases. Every complex over a field is isomorphic to one of this shape.
BoundedComplex random_complex(Rng& rng, const Field& field, int max_dim, int max_window);

/// Same construction for n-periodic complexes (for n = 1 the pieces k -> k sit in one term).
PeriodicComplex random_periodic_complex(Rng& rng, const Field& field, int n, int max_dim);

/// A random element of the space of chain maps x -> y.
ChainMap random_chain_map(Rng& rng, const BoundedComplex& x, const BoundedComplex& y);

/// Rewrites each term of c in a random basis; the result is isomorphic to c.
BoundedComplex random_basis_change(Rng& rng, const BoundedComplex& c);

/// A direct sum of shifted monomial quotients (S/I)(-a) over S(c) on [lo, hi],
/// written in random bases degree by degree. Shifts are kept near hi for larger c
/// so that graded pieces stay small.
GradedModule random_graded_module(Rng& rng, const Field& field, int c, int lo, int hi);

/// A bounded complex of graded S(c)-modules on the internal window [lo, hi] with
/// at most `length` homological degrees. Built from single modules, two-term
/// pieces S(-a) -> (S/J)(-b) given by multiplication with a random polynomial, and
/// (for c >= 2) three-term Koszul pieces, then rewritten in random bases.
GradedComplex random_graded_complex(Rng& rng, const Field& field, int c, int lo, int hi, int length);

/// A flag with the given number of parts, each of dimension <= max_dim: a
/// square-zero matching differential conjugated by a random block
/// upper-triangular automorphism.
FlagData random_flag(Rng& rng, const Field& field, int parts, int max_dim);

}  // namespace perhom
