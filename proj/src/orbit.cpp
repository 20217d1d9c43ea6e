#include "perhom/orbit.hpp"

#include "perhom/errors.hpp"
#include "perhom/periodic.hpp"

namespace perhom {

namespace {

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

}  // namespace

OrbitHomReport orbit_hom(const BoundedComplex& x, const BoundedComplex& y, int n) {
  require_same_field(x.field(), y.field(), "orbit_hom");
  if (n < 1) throw InvalidInput("orbit_hom: period must be >= 1");
  OrbitHomReport report;
  if (!x.empty() && !y.empty()) {
    // Y[ni] occupies [y.lo - ni, y.hi - ni]; it meets [x.lo, x.hi] iff
    // y.lo - x.hi <= ni <= y.hi - x.lo.
    for (int i = ceil_div(y.lo() - x.hi(), n); i <= floor_div(y.hi() - x.lo(), n); ++i) {
      std::size_t d = hom_space_dims(x, shift(y, n * i)).hom_k();
      report.summands.push_back({i, d});
      report.total += d;
    }
  }
  report.periodic_side = periodic_hom_dims(compress(x, n), compress(y, n)).hom_k();
  return report;
}

std::size_t EmbeddingCertificate::equal_pairs() const {
  std::size_t count = 0;
  for (const auto& p : pairs) count += p.report.equal() ? 1 : 0;
  return count;
}

EmbeddingCertificate embedding_certificate(const std::vector<BoundedComplex>& corpus, int n) {
  EmbeddingCertificate cert;
  cert.period = n;
  for (std::size_t a = 0; a < corpus.size(); ++a) {
    for (std::size_t b = 0; b < corpus.size(); ++b) {
      cert.pairs.push_back({a, b, orbit_hom(corpus[a], corpus[b], n)});
    }
  }
  return cert;
}

}  // namespace perhom
