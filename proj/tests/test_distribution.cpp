#include <doctest.h>

#include "kwise/classify.hpp"
#include "kwise/fixtures.hpp"
#include "test_util.hpp"

using namespace kwise;

TEST_SUITE_BEGIN("distributions");

TEST_CASE("constructor enforces exact normalization and support hygiene") {
  CHECK_THROWS_AS(JointDistribution({2, 2}, {{{0, 0}, Rational(1, 2)}}),
                  domain_error);
  CHECK_THROWS_AS(JointDistribution({2, 2}, {{{0, 0}, Rational(1, 2)},
                                             {{0, 0}, Rational(1, 2)}}),
                  domain_error);
  // symbol 1 of coordinate 1 never occurs
  CHECK_THROWS_AS(JointDistribution({2, 2}, {{{0, 0}, Rational(1, 2)},
                                             {{1, 0}, Rational(1, 2)}}),
                  domain_error);
  auto shrunk = JointDistribution({2, 2},
                                  {{{0, 0}, Rational(1, 2)}, {{1, 0}, Rational(1, 2)}},
                                  JointDistribution::ShrinkAlphabets::yes);
  CHECK(shrunk.alphabet(1) == 1);
}

TEST_CASE("marginals of a product distribution recover the factors") {
  // nu1 = (1/4, 3/4), nu2 = (2/5, 2/5, 1/5)
  std::vector<JointDistribution::Atom> atoms;
  std::vector<Rational> nu1{{1, 4}, {3, 4}};
  std::vector<Rational> nu2{{2, 5}, {2, 5}, {1, 5}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b) atoms.push_back({{a, b}, nu1[a] * nu2[b]});
  JointDistribution mu({2, 3}, atoms);
  CHECK(mu.marginal_vector(0) == nu1);
  CHECK(mu.marginal_vector(1) == nu2);
  auto m0 = mu.marginal({0});
  CHECK(m0.atoms().size() == 2);
  CHECK(m0.atoms()[1].p == Rational(3, 4));
}

TEST_CASE("AP marginals are uniform") {
  auto mu = fixtures::ap3_full(3);
  auto m1 = mu.marginal({0});
  for (const auto& a : m1.atoms()) CHECK(a.p == Rational(1, 3));
  auto m12 = mu.marginal({0, 1});
  CHECK(m12.atoms().size() == 9);
  for (const auto& a : m12.atoms()) CHECK(a.p == Rational(1, 9));
}

TEST_CASE("marginal nesting commutes") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    auto mu = testutil::random_weighted(rng, 4, 2, 3);
    auto once = mu.marginal({0, 2});
    auto twice = mu.marginal({0, 1, 2}).marginal({0, 2});
    REQUIRE(once.atoms().size() == twice.atoms().size());
    for (std::size_t i = 0; i < once.atoms().size(); ++i) {
      CHECK(once.atoms()[i].tuple == twice.atoms()[i].tuple);
      CHECK(once.atoms()[i].p == twice.atoms()[i].p);
    }
  }
}

TEST_CASE("support-graph connectivity") {
  auto full = fixtures::full_support(2, 3);
  CHECK(is_connected(full).connected);

  auto two = JointDistribution::uniform_on({2, 2, 2}, {{0, 0, 0}, {1, 1, 1}});
  auto res = is_connected(two);
  CHECK_FALSE(res.connected);
  CHECK(res.partition.component_count == 2);

  // Any two distinct AP atoms differ in at least two coordinates (two
  // coordinates of an AP determine the third), so the support graph over
  // F_3 is edgeless: nine isolated vertices.
  auto ap = fixtures::ap3_full(3);
  auto ap_res = is_connected(ap);
  CHECK_FALSE(ap_res.connected);
  CHECK(ap_res.partition.component_count == 9);
}

TEST_CASE("pairwise connectivity distinguishes the fixtures") {
  CHECK(is_pairwise_connected(fixtures::ap3_full(3)).pairwise_connected);
  CHECK(is_pairwise_connected(fixtures::ap3_restricted(5)).pairwise_connected);
  CHECK_FALSE(is_pairwise_connected(fixtures::dhj3()).pairwise_connected);
  CHECK_FALSE(is_pairwise_connected(fixtures::diagonal(2, 3)).pairwise_connected);
}

TEST_CASE("classify populates consistent flags on the named cases") {
  auto full = classify(fixtures::full_support(2, 3));
  CHECK(full.connected);
  CHECK_FALSE(full.has_abelian_embedding);
  CHECK(full.pairwise_connected);

  auto restricted = classify(fixtures::ap3_restricted(3));
  CHECK(restricted.has_z_embedding);
  CHECK(restricted.pairwise_connected);

  auto diag = classify(fixtures::diagonal(3, 3));
  CHECK_FALSE(diag.connected);
  CHECK(diag.has_abelian_embedding);
  CHECK_FALSE(diag.pairwise_connected);
}

TEST_CASE("implication chain holds on random supports") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    auto mu = testutil::random_support(rng, 3, 2, 4);
    auto rep = classify(mu);  // check_chain() throws on violation
    if (rep.connected) CHECK_FALSE(rep.has_abelian_embedding);
    if (!rep.has_abelian_embedding) CHECK(rep.pairwise_connected);
  }
}

TEST_CASE("empty marginal coordinate set is rejected") {
  CHECK_THROWS_AS(fixtures::dhj3().marginal({}), domain_error);
}

TEST_SUITE_END();
