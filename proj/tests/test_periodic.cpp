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

Matrix m1(const Field& f, long a) { return Matrix::from_rows(f, {{a}}); }

PeriodicComplex nilpotent_pair(const Field& f) {
  return PeriodicComplex(f, {2}, {Matrix::from_rows(f, {{0, 1}, {0, 0}})});
}

}  // namespace

TEST(Periodic, ConstructionChecksShapes) {
  EXPECT_THROW(PeriodicComplex(Q, {1, 2}, {m1(Q, 1), m1(Q, 1)}), DimensionMismatch);
  EXPECT_THROW(PeriodicComplex(Q, {}, {}), InvalidInput);
  auto p = PeriodicComplex(Q, {1, 2}, {Matrix(Q, 2, 1), Matrix(Q, 1, 2)});
  EXPECT_EQ(p.dim(-1), 2u);
  EXPECT_EQ(p.dim(4), 1u);
  EXPECT_TRUE(validate(PeriodicComplex(Q, {1}, {m1(Q, 1)})).has_value());
}

TEST(Periodic, CompressExamples) {
  auto x = k_to_k(Q, 1);
  auto p2 = compress(x, 2);
  EXPECT_EQ(p2.dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(p2.diff(0), m1(Q, 1));
  EXPECT_EQ(p2.diff(1), m1(Q, 0));

  auto p1 = compress(x, 1);
  EXPECT_EQ(p1.dims(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(p1.diff(0), Matrix::from_rows(Q, {{0, 0}, {1, 0}}));

  auto p3 = compress(point(Q, 5), 3);
  EXPECT_EQ(p3.dims(), (std::vector<std::size_t>{0, 0, 1}));
  for (const auto& d : p3.diffs()) EXPECT_TRUE(d.is_zero());

  EXPECT_THROW(compress(x, 0), InvalidInput);
}

TEST(Periodic, CompressMapExamples) {
  auto x = k_to_k(Q, 1);
  EXPECT_EQ(compress_map(ChainMap::identity(x), 2), PeriodicChainMap::identity(compress(x, 2)));

  auto z = k_to_k(Q, 0);
  auto f = ChainMap(z, z, 0, {m1(Q, 1), m1(Q, 2)});
  auto pf = compress_map(f, 2);
  EXPECT_EQ(pf.component(0), m1(Q, 1));
  EXPECT_EQ(pf.component(1), m1(Q, 2));

  auto id = ChainMap::identity(x);
  auto h = find_null_homotopy(id);
  ASSERT_TRUE(h.has_value());
  for (int n = 1; n <= 3; ++n) EXPECT_FALSE(check_homotopy(compress_homotopy(*h, n)).has_value());
}

TEST(Periodic, ExpandWindowExamples) {
  auto p = compress(k_to_k(Q, 1), 2);
  auto e = expand_window(p, 0, 3);
  EXPECT_EQ(e.dims(), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(e.diff(0), m1(Q, 1));
  EXPECT_EQ(e.diff(1), m1(Q, 0));
  EXPECT_EQ(e.diff(2), m1(Q, 1));
  EXPECT_EQ(e.diff(3).rows(), 0u);

  auto point_window = expand_window(p, 0, 0);
  EXPECT_EQ(point_window.dims(), (std::vector<std::size_t>{1}));
  EXPECT_THROW(expand_window(p, 1, 0), InvalidInput);
}

TEST(Periodic, UnitAndRetractionExamples) {
  auto u = unit_and_retraction(point(Q), 1, -1, 1);
  EXPECT_EQ(u.unit.component(0), m1(Q, 1));
  EXPECT_EQ(compose(u.retraction, u.unit), ChainMap::identity(point(Q)));

  auto x = k_to_k(Q, 1);
  auto v = unit_and_retraction(x, 2, -2, 3);
  EXPECT_FALSE(validate(v.unit).has_value());
  EXPECT_EQ(compose(v.retraction, v.unit), ChainMap::identity(x));
  for (int i = -2; i <= 3; ++i) EXPECT_EQ(v.unit.target().dim(i), 1u);

  EXPECT_THROW(unit_and_retraction(x, 2, -1, 3), InvalidInput);
}

TEST(Periodic, ConeExamples) {
  auto k1 = compress(point(Q), 1);
  auto c = periodic_cone(PeriodicChainMap::identity(k1));
  EXPECT_EQ(c.dims(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(c.diff(0), Matrix::from_rows(Q, {{0, 0}, {1, 0}}));
  EXPECT_TRUE(is_acyclic(c));

  auto c0 = periodic_cone(PeriodicChainMap::zero(k1, k1));
  EXPECT_EQ(c0.dims(), (std::vector<std::size_t>{2}));
  EXPECT_TRUE(c0.diff(0).is_zero());

  auto p = compress(k_to_k(Q, 0), 2);
  EXPECT_TRUE(is_acyclic(periodic_cone(PeriodicChainMap::identity(p))));
}

TEST(Periodic, CohomologyExamples) {
  EXPECT_EQ(periodic_cohomology(compress(k_to_k(Q, 1), 2)), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(periodic_cohomology(PeriodicComplex(Q, {1}, {m1(Q, 0)})), (std::vector<std::size_t>{1}));
  EXPECT_EQ(periodic_cohomology(nilpotent_pair(Q)), (std::vector<std::size_t>{0}));
}

TEST(Periodic, HomotopySolverExamples) {
  auto p = compress(k_to_k(Q, 1), 2);
  auto id = PeriodicChainMap::identity(p);
  auto same = find_periodic_homotopy(id, id);
  ASSERT_TRUE(same.has_value());
  for (const auto& s : same->components()) EXPECT_TRUE(s.is_zero());

  auto contractible = compress(cone(ChainMap::identity(point(Q))).complex, 1);
  auto w = find_periodic_homotopy(PeriodicChainMap::identity(contractible),
                                  PeriodicChainMap::zero(contractible, contractible));
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(check_homotopy(*w).has_value());

  auto k = PeriodicComplex(Q, {1}, {m1(Q, 0)});
  EXPECT_FALSE(find_periodic_homotopy(PeriodicChainMap::identity(k), PeriodicChainMap::zero(k, k)).has_value());
}

TEST(Periodic, PeriodizeExampleOfPeriodOne) {
  auto p = nilpotent_pair(Q);
  auto unrolled = expand_window(p, -1, 1);
  auto s = Matrix::from_rows(Q, {{0, 0}, {1, 0}});
  Homotopy h(ChainMap::identity(unrolled), ChainMap::zero(unrolled, unrolled), 0, {s, s});
  auto sigma = periodize_null_homotopy(p, h);
  EXPECT_EQ(sigma.component(0), s);
  EXPECT_EQ(p.diff(0) * sigma.component(0) + sigma.component(0) * p.diff(0), Matrix::identity(Q, 2));
}

TEST(Periodic, PeriodizeExampleOfPeriodTwo) {
  auto p = compress(k_to_k(Q, 1), 2);
  auto s = unrolled_contraction(p);
  ASSERT_TRUE(s.has_value());
  auto sigma = periodize_null_homotopy(p, *s);
  EXPECT_FALSE(check_homotopy(sigma).has_value());
}

TEST(Periodic, PeriodizeRejectsBadInput) {
  auto p = nilpotent_pair(Q);
  auto unrolled = expand_window(p, -1, 1);
  auto zero = Matrix(Q, 2, 2);
  Homotopy h(ChainMap::identity(unrolled), ChainMap::zero(unrolled, unrolled), 0, {zero, zero});
  EXPECT_THROW(periodize_null_homotopy(p, h), InvalidInput);
}

TEST(Periodic, HomDimsExamples) {
  EXPECT_EQ(periodic_hom_dims(compress(point(Q), 1), compress(point(Q), 1)).hom_k(), 1u);
  EXPECT_EQ(periodic_hom_dims(compress(point(Q), 2), compress(point(Q), 2)).hom_k(), 1u);
  auto x = k_to_k(F5, 0);
  std::size_t sum = 0;
  for (int i = -1; i <= 1; ++i) sum += hom_space_dims(x, shift(x, 2 * i)).hom_k();
  EXPECT_EQ(periodic_hom_dims(compress(x, 2), compress(x, 2)).hom_k(), sum);
  EXPECT_THROW(periodic_hom_dims(compress(point(Q), 1), compress(point(Q), 2)), InvalidInput);
}

TEST(Periodic, HomDimsAgreeWithEnumeration) {
  for (const Field& f : {F2, F3}) {
    Rng rng(40 + f.characteristic());
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 30; ++trial) {
      int n = rng.uniform(1, 3);
      auto x = random_periodic_complex(rng, f, n, 2);
      auto y = random_periodic_complex(rng, f, n, 2);
      std::size_t unknowns = 0;
      for (int r = 0; r < n; ++r) unknowns += y.dim(r) * x.dim(r) + y.dim(r - 1) * x.dim(r);
      if (unknowns > (f.characteristic() == 2 ? 14u : 9u)) continue;
      ++checked;
      EXPECT_EQ(periodic_hom_dims(x, y), oracle::periodic_hom_report(x, y)) << "trial " << trial;
    }
    EXPECT_GE(checked, 15);
  }
}

TEST(Periodic, ShiftExamples) {
  Rng rng(2);
  auto p = random_periodic_complex(rng, Q, 3, 3);
  auto s = shift_periodic(p, 3);
  EXPECT_EQ(s.dims(), p.dims());
  for (int r = 0; r < 3; ++r) EXPECT_EQ(s.diff(r), -p.diff(r));
  EXPECT_EQ(shift_periodic(p, 0), p);
  EXPECT_EQ(shift_periodic(shift_periodic(p, 1), 1), shift_periodic(p, 2));
}

TEST(Periodic, TwistExamples) {
  Rng rng(4);
  auto x = random_complex(rng, Q, 3, 4);
  auto t2 = twist_iso(x, 2);
  for (int i = t2.lo(); i <= t2.hi(); ++i) {
    EXPECT_EQ(t2.component(i), Matrix::identity(Q, t2.source().dim(i)));
  }
  auto y = k_to_k(Q, 3);
  auto t1 = twist_iso(y, 1);
  EXPECT_FALSE(validate(t1).has_value());
  EXPECT_EQ(t1.component(-1), m1(Q, 1));
  EXPECT_EQ(t1.component(0), m1(Q, -1));
  EXPECT_EQ(t1.source().diff(-1), m1(Q, -3));
  EXPECT_EQ(t1.target().diff(-1), m1(Q, 3));
}

TEST(PeriodicProperty, CompressionValidates) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_complex(rng, trial % 2 ? F3 : Q, 3, 5);
    for (int n = 1; n <= 4; ++n) {
      auto p = compress(x, n);
      EXPECT_FALSE(validate(p).has_value());
      EXPECT_EQ(p.total_dim(), x.total_dim());
    }
  }
}

TEST(PeriodicProperty, CompressionIsFunctorial) {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Field& f = trial % 2 ? F5 : Q;
    auto x = random_complex(rng, f, 2, 4);
    auto y = random_complex(rng, f, 2, 4);
    auto z = random_complex(rng, f, 2, 4);
    auto a = random_chain_map(rng, x, y);
    auto b = random_chain_map(rng, y, z);
    for (int n = 1; n <= 3; ++n) {
      auto pa = compress_map(a, n);
      EXPECT_FALSE(validate(pa).has_value());
      EXPECT_EQ(compress_map(compose(b, a), n), compose(compress_map(b, n), pa));
    }
  }
}

TEST(PeriodicProperty, ConeCommutesWithCompression) {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const Field& f = trial % 2 ? F3 : Q;
    auto x = random_complex(rng, f, 2, 4);
    auto y = random_complex(rng, f, 2, 4);
    auto g = random_chain_map(rng, x, y);
    for (int n = 1; n <= 3; ++n) {
      auto lhs = reorder(compress(cone(g).complex, n), cone_compression_reordering(g, n));
      EXPECT_EQ(lhs, periodic_cone(compress_map(g, n))) << "trial " << trial << " n " << n;
    }
  }
}

TEST(PeriodicProperty, RetractionSplitsUnit) {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_complex(rng, trial % 2 ? F2 : Q, 3, 4);
    int n = rng.uniform(1, 3);
    int lo = x.lo() - n - rng.uniform(0, 2);
    int hi = x.hi() + n + rng.uniform(0, 2);
    auto u = unit_and_retraction(x, n, lo, hi);
    EXPECT_EQ(compose(u.retraction, u.unit), ChainMap::identity(x));
    // both are chain maps away from the truncated edge
    for (int i = lo; i < hi - 1; ++i) {
      EXPECT_EQ(u.unit.target().diff(i) * u.unit.component(i), u.unit.component(i + 1) * x.diff(i));
      EXPECT_EQ(x.diff(i) * u.retraction.component(i), u.retraction.component(i + 1) * u.unit.target().diff(i));
    }
  }
}

TEST(PeriodicProperty, PeriodizationOfUnrolledContraction) {
  Rng rng(35);
  int contracted = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.uniform(1, 4);
    auto p = random_periodic_complex(rng, trial % 2 ? F3 : Q, n, 3);
    auto s = unrolled_contraction(p);
    EXPECT_EQ(s.has_value(), is_acyclic(p));
    if (!s) continue;
    ++contracted;
    EXPECT_FALSE(check_homotopy(periodize_null_homotopy(p, *s)).has_value());
  }
  EXPECT_GE(contracted, 10);
}

TEST(PeriodicProperty, AcyclicityTransfersToUnrolling) {
  Rng rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.uniform(1, 4);
    auto p = random_periodic_complex(rng, trial % 2 ? F2 : Q, n, 3);
    auto h = cohomology_dims(expand_window(p, 0, 2 * n));
    bool interior_zero = true;
    for (auto [d, v] : h) {
      if (d >= 1 && d <= 2 * n - 1 && v != 0) interior_zero = false;
    }
    EXPECT_EQ(is_acyclic(p), interior_zero);
  }
}

TEST(PeriodicProperty, ShiftByPeriodOnlyFlipsSigns) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform(1, 4);
    auto p = random_periodic_complex(rng, F5, n, 3);
    auto s = shift_periodic(p, n);
    EXPECT_EQ(s.dims(), p.dims());
    for (int r = 0; r < n; ++r) EXPECT_EQ(s.diff(r), p.diff(r).scaled(n % 2 ? -1 : 1));
  }
}

TEST(PeriodicProperty, TwistIsAChainIsomorphism) {
  Rng rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_complex(rng, trial % 2 ? F3 : Q, 3, 4);
    int n = rng.uniform(1, 4);
    auto t = twist_iso(x, n);
    EXPECT_FALSE(validate(t).has_value());
    for (int i = t.lo(); i <= t.hi(); ++i) EXPECT_EQ(rank(t.component(i)), t.source().dim(i));
  }
}
