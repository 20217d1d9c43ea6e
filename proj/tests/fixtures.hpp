#pragma once

#include "perhom/complex.hpp"

namespace perhom::fixture {

inline const Field Q = Field::rationals();

/// k --a--> k in degrees lo, lo + 1.
inline BoundedComplex k_to_k(const Field& f, long a, int lo = 0) {
  return BoundedComplex(f, lo, {1, 1}, {Matrix::from_rows(f, {{a}})});
}

inline BoundedComplex point(const Field& f, int degree = 0) {
  return BoundedComplex::concentrated(f, degree);
}

}  // namespace perhom::fixture
