#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "perhom/errors.hpp"
#include "perhom/gralg.hpp"
#include "perhom/linalg.hpp"
#include "perhom/random.hpp"

using namespace perhom;
using fixture::k_to_k;
using fixture::point;
using fixture::Q;

namespace {

const Field F5 = Field::prime(5);
const Field F7 = Field::prime(7);

Matrix m1(const Field& f, long a) { return Matrix::from_rows(f, {{a}}); }

// Number of exponent vectors of degree d in c variables, by brute enumeration.
std::size_t count_monomials(int c, int d) {
  std::size_t count = 0;
  std::vector<int> e(static_cast<std::size_t>(c), 0);
  for (;;) {
    int sum = 0;
    for (int v : e) sum += v;
    count += sum == d ? 1 : 0;
    std::size_t k = 0;
    while (k < e.size() && e[k] == d) e[k++] = 0;
    if (k == e.size()) break;
    ++e[k];
  }
  return count;
}

FlagData two_part_flag(const Field& f) { return FlagData{f, {1, 1}, {{}, {m1(f, 1)}}}; }

}  // namespace

TEST(GradedModule, PolynomialRingValidates) {
  auto s = monomial_module(Q, 1, {}, 0, 0, 3);
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(s.action(0, 0), m1(Q, 1));
  EXPECT_EQ(s.action(0, 3).rows(), 0u);
  EXPECT_FALSE(validate_module(s).has_value());
}

TEST(GradedModule, ExteriorAlgebraOfRankOne) {
  auto l = exterior_algebra(Q, 1);
  EXPECT_EQ(l.lo(), -1);
  EXPECT_EQ(l.dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(l.action(0, 0), m1(Q, 1));
  EXPECT_FALSE(validate_module(l).has_value());
}

TEST(GradedModule, BrokenAnticommutationIsReported) {
  auto l = exterior_algebra(Q, 2);
  EXPECT_FALSE(validate_module(l).has_value());
  auto actions = l.actions();
  // flip ξ_1 on degree -1 so that ξ_0 ξ_1 = ξ_1 ξ_0 on degree 0
  actions[1][1] = actions[1][1].scaled(-1);
  GradedModule bad(Q, l.algebra(), l.lo(), l.dims(), actions);
  auto v = validate_module(bad);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->first, 0);
  EXPECT_EQ(v->second, 1);
  EXPECT_EQ(v->degree, 0);
}

TEST(GradedModule, SquareOfExteriorGeneratorMustVanish) {
  Matrix one = m1(Q, 1);
  GradedModule bad(Q, Algebra::ext(1), -2, {1, 1, 1}, {{Matrix(Q, 0, 1), one, one}});
  auto v = validate_module(bad);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->first, v->second);
}

TEST(GradedModule, ConstructionChecksShapes) {
  EXPECT_THROW(GradedModule(Q, Algebra::poly(1), 0, {1, 1}, {{m1(Q, 1)}}), DimensionMismatch);
  EXPECT_THROW(GradedModule(Q, Algebra::poly(1), 0, {1, 2}, {{m1(Q, 1), Matrix(Q, 0, 2)}}), DimensionMismatch);
  EXPECT_THROW(GradedModule(Q, Algebra::poly(2), 0, {1}, {{Matrix(Q, 0, 1)}}), DimensionMismatch);
}

TEST(GradedModule, MonomialCountsMatchEnumeration) {
  for (int c = 1; c <= 3; ++c) {
    for (int d = 0; d <= 4; ++d) {
      EXPECT_EQ(monomials(c, d).size(), count_monomials(c, d));
      EXPECT_EQ(monomial_module(Q, c, {}, 0, d, d).dim(d), count_monomials(c, d));
    }
  }
  // S/(x_0^2) in degree 3 over two variables: x_0 x_1^2, x_1^3
  EXPECT_EQ(monomial_basis(2, {{2, 0}}, 0, 3), (std::vector<Exponent>{{1, 2}, {0, 3}}));
}

TEST(GradedModule, PolynomialMapMustBeLinear) {
  // x : S(-1) -> S is fine; x : S(-1)/(x) -> S is not
  EXPECT_NO_THROW(polynomial_map(Q, 1, {}, 1, {}, 0, {{{1}, 1}}, 0, 3));
  EXPECT_THROW(polynomial_map(Q, 1, {{1}}, 1, {}, 0, {{{1}, 1}}, 0, 3), InvalidInput);
  EXPECT_THROW(polynomial_map(Q, 1, {}, 1, {}, 0, {{{2}, 1}}, 0, 3), InvalidInput);
}

TEST(GradedModuleProperty, FreeModulesValidateAndSignFlipsAreCaught) {
  Rng rng(100);
  int mutated_count = 0;
  for (int c = 1; c <= 3; ++c) {
    for (int trial = 0; trial < 10; ++trial) {
      const Field& f = trial % 2 ? F5 : Q;
      int lo = rng.uniform(-1, 1);
      int hi = lo + 3;
      std::vector<GradedModule> parts;
      for (int k = rng.uniform(1, 2); k > 0; --k) parts.push_back(monomial_module(f, c, {}, rng.uniform(lo - 1, lo + 1), lo, hi));
      auto sum = direct_sum(parts);
      std::vector<Matrix> bases;
      for (auto d : sum.dims()) bases.push_back(random_invertible(rng, f, d));
      auto m = change_basis(sum, bases);
      EXPECT_FALSE(validate_module(m).has_value());
      if (c == 1) continue;  // a single generator obeys no relation that a sign flip could break
      // negate one generator at one degree where x_l x_j is nonzero
      for (int i = lo; i + 2 <= hi; ++i) {
        if ((m.action(1, i + 1) * m.action(0, i)).is_zero()) continue;
        auto actions = m.actions();
        actions[0][static_cast<std::size_t>(i - lo)] = actions[0][static_cast<std::size_t>(i - lo)].scaled(-1);
        GradedModule mutated(f, m.algebra(), lo, m.dims(), actions);
        EXPECT_TRUE(validate_module(mutated).has_value()) << "c=" << c << " degree " << i;
        ++mutated_count;
        break;
      }
    }
  }
  EXPECT_GE(mutated_count, 15);
}

TEST(GradedModuleProperty, RandomModulesAndComplexesValidate) {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    int c = rng.uniform(1, 3);
    const Field& f = trial % 2 ? F5 : Q;
    auto m = random_graded_module(rng, f, c, 0, 4);
    EXPECT_FALSE(validate_module(m).has_value());
    auto mc = random_graded_complex(rng, f, c, 0, 4, 3);
    EXPECT_FALSE(validate(mc).has_value()) << "trial " << trial;
    for (int n = 1; n <= 3; ++n) EXPECT_FALSE(validate(compress(mc, n)).has_value());
  }
}

TEST(Flag, SinglePartHasZeroDifferential) {
  FlagData flag{Q, {3}, {{}}};
  auto p = flag_assemble(flag);
  EXPECT_EQ(p.period(), 1);
  EXPECT_TRUE(p.diff(0).is_zero());
  EXPECT_EQ(flag_filtration(flag).size(), 1u);
}

TEST(Flag, TwoPartsGiveContractibleNilpotent) {
  auto p = flag_assemble(two_part_flag(Q));
  EXPECT_EQ(p.diff(0), Matrix::from_rows(Q, {{0, 1}, {0, 0}}));
  EXPECT_TRUE(is_acyclic(p));
  auto stages = flag_filtration(two_part_flag(Q));
  ASSERT_EQ(stages.size(), 2u);
  EXPECT_EQ(stages[0].sub, PeriodicComplex(Q, {1}, {m1(Q, 0)}));
  EXPECT_FALSE(stages[0].inclusion.has_value());
  ASSERT_TRUE(stages[1].inclusion.has_value());
  EXPECT_FALSE(validate(*stages[1].inclusion).has_value());
  EXPECT_EQ(stages[1].subquotient.dims(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(stages[1].subquotient.diff(0).is_zero());
}

TEST(Flag, NonSquareZeroDataIsRejected) {
  FlagData flag{Q, {1, 1, 1}, {{}, {m1(Q, 1)}, {m1(Q, 0), m1(Q, 1)}}};
  EXPECT_THROW(flag_assemble(flag), InvalidInput);
  FlagData shapes{Q, {1, 2}, {{}, {m1(Q, 1)}}};
  EXPECT_THROW(flag_assemble(shapes), DimensionMismatch);
}

TEST(FlagProperty, RandomFlagsOverF7) {
  Rng rng(102);
  for (int trial = 0; trial < 25; ++trial) {
    auto flag = random_flag(rng, F7, 3, 3);
    auto p = flag_assemble(flag);
    EXPECT_FALSE(validate(p).has_value());
    auto stages = flag_filtration(flag);
    ASSERT_EQ(stages.size(), 3u);
    for (std::size_t i = 0; i < stages.size(); ++i) {
      EXPECT_TRUE(stages[i].subquotient.diff(0).is_zero());
      EXPECT_EQ(stages[i].subquotient.dim(0), flag.parts[i]);
      EXPECT_FALSE(validate(stages[i].sub).has_value());
      if (i > 0) EXPECT_FALSE(validate(*stages[i].inclusion).has_value());
    }
  }
}

TEST(Tensor, UnitOnTheLeft) {
  Rng rng(103);
  auto y = random_periodic_complex(rng, Q, 3, 3);
  EXPECT_EQ(tensor_periodic(point(Q), y), y);
}

TEST(Tensor, ArrowTimesPointOfPeriodOne) {
  auto t = tensor_periodic(k_to_k(Q, 1), compress(point(Q), 1));
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(rank(t.diff(0)), 1u);
  EXPECT_TRUE((t.diff(0) * t.diff(0)).is_zero());
  EXPECT_TRUE(is_acyclic(t));
}

TEST(Tensor, FieldMismatch) {
  EXPECT_THROW(tensor_periodic(point(Q), compress(point(F5), 1)), FieldMismatch);
}

TEST(TensorProperty, CompressionSquareCommutes) {
  Rng rng(104);
  for (const Field& f : {F5, Q}) {
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 25; ++trial) {
        auto x = random_complex(rng, f, 3, 4);
        auto y = random_complex(rng, f, 3, 4);
        auto lhs = reorder(compress(tensor_complex(x, y), n), tensor_compression_reordering(x, y, n));
        auto rhs = tensor_periodic(x, compress(y, n));
        EXPECT_EQ(lhs, rhs) << f.to_string() << " n=" << n << " trial " << trial;
      }
    }
  }
}
