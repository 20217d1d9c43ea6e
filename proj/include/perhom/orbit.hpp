#pragma once

#include <cstddef>
#include <vector>

#include "perhom/complex.hpp"

namespace perhom {

struct OrbitSummand {
  int index = 0;        // i in Hom_K(X, Y[n i])
  std::size_t dim = 0;  // dim Hom_K(X, Y[n i])
  friend bool operator==(const OrbitSummand&, const OrbitSummand&) = default;
};

/// Hom in the orbit category K/[n], computed two ways: as the sum over i of
/// dim Hom_K(X, Y[ni]), and as dim Hom_{K_n}(ΔX, ΔY).
struct OrbitHomReport {
  std::vector<OrbitSummand> summands;  // every i for which the windows of X and Y[ni] meet
  std::size_t total = 0;
  std::size_t periodic_side = 0;
  bool equal() const { return total == periodic_side; }
};

OrbitHomReport orbit_hom(const BoundedComplex& x, const BoundedComplex& y, int n);

struct PairReport {
  std::size_t source = 0;  // corpus indices
  std::size_t target = 0;
  OrbitHomReport report;
};

struct EmbeddingCertificate {
  int period = 1;
  std::vector<PairReport> pairs;  // ordered by (source, target)
  std::size_t equal_pairs() const;
  bool holds() const { return equal_pairs() == pairs.size(); }
};

/// orbit_hom on every ordered pair of the corpus.
EmbeddingCertificate embedding_certificate(const std::vector<BoundedComplex>& corpus, int n);

}  // namespace perhom
