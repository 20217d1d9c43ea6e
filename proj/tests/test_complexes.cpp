#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "perhom/errors.hpp"
#include "perhom/linalg.hpp"
#include "perhom/random.hpp"

using namespace perhom;
using fixture::k_to_k;
using fixture::point;
using fixture::Q;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

std::size_t dim_at(const std::vector<std::pair<int, std::size_t>>& h, int degree) {
  for (auto [d, v] : h) {
    if (d == degree) return v;
  }
  return 0;
}

std::size_t unknown_count(const BoundedComplex& x, const BoundedComplex& y) {
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  std::size_t n = 0;
  for (int i = lo; i <= hi + 1; ++i) n += y.dim(i) * x.dim(i) + y.dim(i - 1) * x.dim(i);
  return n;
}

}  // namespace

TEST(Complex, ConstructionChecksShapes) {
  EXPECT_THROW(BoundedComplex(Q, 0, {1, 2}, {Matrix::from_rows(Q, {{1}})}), DimensionMismatch);
  EXPECT_THROW(BoundedComplex(Q, 0, {1, 1}, {}), DimensionMismatch);
  auto c = k_to_k(Q, 1, 3);
  EXPECT_EQ(c.lo(), 3);
  EXPECT_EQ(c.hi(), 4);
  EXPECT_EQ(c.dim(2), 0u);
  EXPECT_EQ(c.diff(4).rows(), 0u);
  EXPECT_EQ(c.diff(4).cols(), 1u);
}

TEST(Complex, ValidateExamples) {
  EXPECT_FALSE(validate(k_to_k(Q, 1)).has_value());
  auto one = Matrix::from_rows(Q, {{1}});
  auto bad = BoundedComplex(Q, 0, {1, 1, 1}, {one, one});
  auto v = validate(bad);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->degree, 0);
  EXPECT_FALSE(validate(BoundedComplex(Q)).has_value());
}

TEST(Complex, ShiftExamples) {
  auto c = k_to_k(Q, 1);
  EXPECT_EQ(shift(c, 0), c);
  auto s = shift(c, 1);
  EXPECT_EQ(s, k_to_k(Q, -1, -1));
  EXPECT_EQ(shift(shift(c, 1), 1).diffs(), shift(c, 2).diffs());
  EXPECT_EQ(regrade(c, 1), k_to_k(Q, 1, -1));
}

TEST(Complex, ConeOfIdentityIsContractible) {
  auto x = point(Q);
  auto c = cone(ChainMap::identity(x));
  EXPECT_EQ(c.complex, k_to_k(Q, 1, -1));
  EXPECT_TRUE(is_acyclic(c.complex));
  EXPECT_FALSE(validate(c.inclusion).has_value());
  EXPECT_FALSE(validate(c.projection).has_value());
}

TEST(Complex, ConeOfZeroMap) {
  auto x = point(Q);
  auto c = cone(ChainMap::zero(x, x));
  EXPECT_EQ(c.complex, k_to_k(Q, 0, -1));
}

TEST(Complex, ConeOfInvertibleScalarIsAcyclicOverQ) {
  auto x = point(Q);
  auto two = ChainMap(x, x, 0, {Matrix::from_rows(Q, {{2}})});
  EXPECT_TRUE(is_acyclic(cone(two).complex));
  auto y = k_to_k(Q, 1);
  EXPECT_TRUE(is_acyclic(cone(ChainMap::identity(y).scaled(2)).complex));
  // over F_2 the same scalar is zero
  auto x2 = point(F2);
  auto two2 = ChainMap(x2, x2, 0, {Matrix::from_rows(F2, {{2}})});
  EXPECT_FALSE(is_acyclic(cone(two2).complex));
}

TEST(Complex, ConeRejectsInvalidMap) {
  auto x = k_to_k(Q, 1);
  auto f = ChainMap(x, x, 0, {Matrix::from_rows(Q, {{1}}), Matrix::from_rows(Q, {{0}})});
  EXPECT_THROW(cone(f), InvalidInput);
}

TEST(Complex, CohomologyExamples) {
  auto exact = cohomology_dims(k_to_k(Q, 1));
  EXPECT_EQ(dim_at(exact, 0), 0u);
  EXPECT_EQ(dim_at(exact, 1), 0u);
  auto zero = cohomology_dims(k_to_k(Q, 0));
  EXPECT_EQ(dim_at(zero, 0), 1u);
  EXPECT_EQ(dim_at(zero, 1), 1u);
  EXPECT_THROW(cohomology_dims(BoundedComplex(Q, 0, {1, 1, 1},
                                              {Matrix::from_rows(Q, {{1}}), Matrix::from_rows(Q, {{1}})})),
               InvalidInput);
}

TEST(Complex, HomSpaceExamples) {
  auto r = hom_space_dims(point(Q), point(Q));
  EXPECT_EQ(r.chain_maps, 1u);
  EXPECT_EQ(r.null_homotopic, 0u);
  EXPECT_EQ(r.hom_k(), 1u);
  EXPECT_EQ(hom_space_dims(k_to_k(Q, 1), k_to_k(Q, 1)).hom_k(), 0u);
  auto z = hom_space_dims(k_to_k(F5, 0), k_to_k(F5, 0));
  EXPECT_EQ(z, (HomReport{2, 0}));
  EXPECT_THROW(hom_space_dims(point(Q), point(F5)), FieldMismatch);
}

TEST(Complex, HomSpaceAgreesWithEnumeration) {
  EXPECT_EQ(hom_space_dims(k_to_k(F5, 0), k_to_k(F5, 0)), oracle::hom_report(k_to_k(F5, 0), k_to_k(F5, 0)));
  EXPECT_EQ(hom_space_dims(k_to_k(F2, 1), k_to_k(F2, 1)), oracle::hom_report(k_to_k(F2, 1), k_to_k(F2, 1)));
  for (const Field& f : {F2, F3}) {
    Rng rng(f.characteristic() * 1000 + 7);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
      auto x = random_complex(rng, f, 2, 3);
      auto y = random_complex(rng, f, 2, 3);
      std::size_t limit = f.characteristic() == 2 ? 13 : 8;
      if (unknown_count(x, y) > limit) continue;
      ++checked;
      EXPECT_EQ(hom_space_dims(x, y), oracle::hom_report(x, y)) << "trial " << trial;
    }
    EXPECT_GE(checked, 20);
  }
}

TEST(Complex, NullHomotopyExamples) {
  auto c = k_to_k(Q, 1);
  auto h = find_null_homotopy(ChainMap::identity(c));
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(h->component(1), Matrix::from_rows(Q, {{1}}));
  EXPECT_FALSE(check_homotopy(*h).has_value());

  EXPECT_FALSE(find_null_homotopy(ChainMap::identity(point(Q))).has_value());

  auto cone_id = cone(ChainMap::identity(point(Q))).complex;
  auto h2 = find_null_homotopy(ChainMap::identity(cone_id).scaled(2));
  ASSERT_TRUE(h2.has_value());
  EXPECT_FALSE(check_homotopy(*h2).has_value());
}

TEST(Complex, NullHomotopyAgreesWithHomClass) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Field& f = trial % 2 ? F3 : Q;
    auto x = random_complex(rng, f, 2, 3);
    auto y = random_complex(rng, f, 2, 3);
    auto g = random_chain_map(rng, x, y);
    auto h = find_null_homotopy(g);
    if (h) {
      EXPECT_FALSE(check_homotopy(*h).has_value());
      continue;
    }
    // An absent homotopy means the class of g is a nonzero element of Hom_K.
    EXPECT_GT(hom_space_dims(x, y).hom_k(), 0u) << "trial " << trial;
  }
}

TEST(Complex, TensorExamples) {
  auto y = k_to_k(Q, 1);
  EXPECT_EQ(tensor_complex(point(Q), y), y);
  auto t = tensor_complex(y, y);
  EXPECT_EQ(t.lo(), 0);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(t.diff(0), Matrix::from_rows(Q, {{1}, {1}}));
  EXPECT_EQ(t.diff(1), Matrix::from_rows(Q, {{1, -1}}));
  EXPECT_EQ(rank(t.diff(1)), 1u);
  EXPECT_FALSE(validate(t).has_value());
  EXPECT_EQ(t.euler_characteristic(), y.euler_characteristic() * y.euler_characteristic());
  EXPECT_THROW(tensor_complex(point(Q), point(F5)), FieldMismatch);
}

TEST(ComplexProperty, ConeEulerCharacteristic) {
  Rng rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const Field& f = trial % 3 == 0 ? Q : (trial % 3 == 1 ? F2 : F5);
    auto x = random_complex(rng, f, 3, 4);
    auto y = random_complex(rng, f, 3, 4);
    auto g = random_chain_map(rng, x, y);
    auto c = cone(g);
    EXPECT_FALSE(validate(c.complex).has_value());
    EXPECT_EQ(c.complex.euler_characteristic(), y.euler_characteristic() - x.euler_characteristic());
    long alt = 0;
    for (auto [d, v] : cohomology_dims(c.complex)) alt += (d % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    EXPECT_EQ(alt, c.complex.euler_characteristic());
  }
}

TEST(ComplexProperty, ShiftMovesCohomology) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_complex(rng, trial % 2 ? Q : F3, 3, 4);
    auto h = cohomology_dims(c);
    for (int l = -4; l <= 4; ++l) {
      auto s = shift(c, l);
      EXPECT_FALSE(validate(s).has_value());
      auto hs = cohomology_dims(s);
      for (int i = c.lo() - l - 1; i <= c.hi() - l + 1; ++i) EXPECT_EQ(dim_at(hs, i), dim_at(h, i + l));
    }
  }
}

TEST(ComplexProperty, IdentityIsAChainMap) {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_complex(rng, trial % 2 ? Q : F2, 3, 4);
    if (c.total_dim() == 0) continue;
    EXPECT_GE(hom_space_dims(c, c).chain_maps, 1u);
  }
}

TEST(ComplexProperty, HomKIsInvariantUnderBasisChange) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_complex(rng, Q, 2, 3);
    auto y = random_complex(rng, Q, 2, 3);
    auto a = hom_space_dims(x, y).hom_k();
    EXPECT_EQ(hom_space_dims(random_basis_change(rng, x), random_basis_change(rng, y)).hom_k(), a);
  }
}

TEST(ComplexProperty, TensorEulerCharacteristicMultiplies) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_complex(rng, F3, 2, 3);
    auto y = random_complex(rng, F3, 2, 3);
    auto t = tensor_complex(x, y);
    EXPECT_FALSE(validate(t).has_value());
    EXPECT_EQ(t.euler_characteristic(), x.euler_characteristic() * y.euler_characteristic());
  }
}

TEST(ComplexProperty, ComposeIsAssociativeAndUnital) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_complex(rng, F5, 2, 3);
    auto y = random_complex(rng, F5, 2, 3);
    auto z = random_complex(rng, F5, 2, 3);
    auto f = random_chain_map(rng, x, y);
    auto g = random_chain_map(rng, y, z);
    auto h = random_chain_map(rng, z, z);
    EXPECT_FALSE(validate(compose(g, f)).has_value());
    EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
    EXPECT_EQ(compose(ChainMap::identity(y), f), f);
  }
}
