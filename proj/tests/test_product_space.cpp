#include <doctest.h>

#include "kwise/function_table.hpp"
#include "kwise/product_space.hpp"
#include "test_util.hpp"

using namespace kwise;

TEST_SUITE_BEGIN("indexing");

TEST_CASE("lexicographic rank, first coordinate most significant") {
  ProductSpace sp({3, 3});
  CHECK(sp.index_of({0, 0}) == 0);
  CHECK(sp.index_of({1, 2}) == 5);
  CHECK_THROWS_AS(sp.index_of({3, 0}), domain_error);
  CHECK_THROWS_AS(sp.index_of({0, 0, 0}), domain_error);
}

TEST_CASE("point_of inverts index_of on every point") {
  ProductSpace sp({2, 3, 4});
  REQUIRE(sp.total_size() == 24);
  for (std::size_t i = 0; i < sp.total_size(); ++i)
    CHECK(sp.index_of(sp.point_of(i)) == i);
}

TEST_CASE("sample_subset endpoints and determinism") {
  CHECK(sample_subset(10, 0.0, 3).count() == 0);
  CHECK(sample_subset(10, 1.0, 3).count() == 10);
  CHECK(sample_subset(17, 0.4, 99).bits == sample_subset(17, 0.4, 99).bits);
  CHECK_THROWS_AS(sample_subset(4, 1.5, 0), domain_error);
}

TEST_CASE("sampled subset sizes concentrate at delta*n") {
  int n = 1000, hits = 0, trials = 1000;
  for (int s = 0; s < trials; ++s) {
    double frac = sample_subset(n, 0.3, static_cast<std::uint64_t>(s)).count() /
                  static_cast<double>(n);
    if (std::abs(frac - 0.3) <= 0.05) ++hits;
  }
  CHECK(hits >= trials * 99 / 100);
}

TEST_CASE("restriction keeps or collapses the table") {
  Rng rng(5);
  ProductSpace sp({2, 2, 2});
  auto f = testutil::random_bounded(sp, rng);

  auto same = restrict(f, {CoordinateSubset::full(3), {}});
  CHECK(same.values() == f.values());

  auto pt = restrict(f, {CoordinateSubset::empty(3), {1, 0, 1}});
  REQUIRE(pt.space().total_size() == 1);
  CHECK(pt[0] == f[sp.index_of({1, 0, 1})]);
}

TEST_CASE("restriction matches direct evaluation pointwise") {
  Rng rng(6);
  ProductSpace sp({2, 2, 2});
  auto f = testutil::random_bounded(sp, rng);
  // keep only coordinate 1, fix (x0, x2) = (1, 0)
  auto r = restrict(f, {CoordinateSubset::of(3, {1}), {1, 0}});
  for (int s = 0; s < 2; ++s)
    CHECK(r[s] == f[sp.index_of({1, s, 0})]);
}

TEST_CASE("disjoint restrictions compose") {
  Rng rng(7);
  ProductSpace sp({2, 3, 2, 3});
  auto f = testutil::random_bounded(sp, rng);
  // fix coordinate 0 to 1, then (in the restricted table) fix old coordinate
  // 2 (new index 1) to 0; compare with the combined restriction.
  auto step1 = restrict(f, {CoordinateSubset::of(4, {1, 2, 3}), {1}});
  auto step2 = restrict(step1, {CoordinateSubset::of(3, {0, 2}), {0}});
  auto combined = restrict(f, {CoordinateSubset::of(4, {1, 3}), {1, 0}});
  REQUIRE(step2.values().size() == combined.values().size());
  for (std::size_t i = 0; i < combined.values().size(); ++i)
    CHECK(step2[i] == combined[i]);
}

TEST_CASE("restriction rejects bad shapes") {
  Rng rng(8);
  auto f = testutil::random_bounded(ProductSpace({2, 2}), rng);
  CHECK_THROWS_AS(restrict(f, {CoordinateSubset::full(3), {}}), domain_error);
  CHECK_THROWS_AS(restrict(f, {CoordinateSubset::of(2, {0}), {5}}), domain_error);
}

TEST_SUITE_END();
