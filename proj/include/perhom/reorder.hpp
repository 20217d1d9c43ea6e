#pragma once

#include <cstddef>
#include <vector>

#include "perhom/matrix.hpp"

namespace perhom {

/// Names a basis vector by where it comes from, e.g. (summand tag, degree, index).
using BasisKey = std::vector<int>;
using TermLabels = std::vector<BasisKey>;

/// perm[k] is the position in `to` of the basis vector labelled from[k].
/// Throws InvalidInput unless the labels correspond bijectively.
std::vector<std::size_t> match_labels(const TermLabels& from, const TermLabels& to);

/// P with P e_k = e_{perm[k]}.
Matrix permutation_matrix(Field field, const std::vector<std::size_t>& perm);

/// Rewrites m : V -> W in reordered bases: result[out[a]][in[b]] = m[a][b].
Matrix permute(const Matrix& m, const std::vector<std::size_t>& out,
               const std::vector<std::size_t>& in);

}  // namespace perhom
