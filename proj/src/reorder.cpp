#include "perhom/reorder.hpp"

#include <map>

#include "perhom/errors.hpp"

namespace perhom {

std::vector<std::size_t> match_labels(const TermLabels& from, const TermLabels& to) {
  if (from.size() != to.size()) throw InvalidInput("match_labels: terms have different dimensions");
  std::map<BasisKey, std::size_t> position;
  for (std::size_t k = 0; k < to.size(); ++k) {
    if (!position.emplace(to[k], k).second) throw InvalidInput("match_labels: duplicate label");
  }
  std::vector<std::size_t> perm;
  perm.reserve(from.size());
  for (const auto& key : from) {
    auto it = position.find(key);
    if (it == position.end()) throw InvalidInput("match_labels: unmatched label");
    perm.push_back(it->second);
    position.erase(it);
  }
  return perm;
}

Matrix permutation_matrix(Field field, const std::vector<std::size_t>& perm) {
  Matrix p(field, perm.size(), perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) p.set(perm[k], k, 1L);
  return p;
}

Matrix permute(const Matrix& m, const std::vector<std::size_t>& out,
               const std::vector<std::size_t>& in) {
  if (out.size() != m.rows() || in.size() != m.cols()) throw DimensionMismatch("permute: size mismatch");
  Matrix r(m.field(), m.rows(), m.cols());
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) {
      if (!m.is_zero_at(a, b)) r.set(out[a], in[b], m.at(a, b));
    }
  }
  return r;
}

}  // namespace perhom
