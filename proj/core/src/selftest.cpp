#include "kwise/selftest.hpp"

#include <cmath>

#include "kwise/classify.hpp"
#include "kwise/correlation.hpp"
#include "kwise/csp.hpp"
#include "kwise/fixtures.hpp"
#include "kwise/games.hpp"
#include "kwise/norms.hpp"
#include "kwise/patterns.hpp"
#include "kwise/rng.hpp"

namespace kwise::selftest {

namespace {

struct Checker {
  Result res;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      res.passed = false;
      res.failures.push_back(what);
    }
  }
};

FunctionTable random_table(const ProductSpace& sp, Rng& rng, bool bounded = true) {
  std::vector<Complex> vals(sp.total_size());
  for (auto& v : vals) {
    v = Complex(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
    if (bounded && std::abs(v) > 1) v /= std::abs(v);
  }
  return FunctionTable::uniform(sp, std::move(vals));
}

JointDistribution random_support_dist(Rng& rng, int k, int max_alpha) {
  for (;;) {
    std::vector<int> alph(k);
    for (int i = 0; i < k; ++i)
      alph[i] = 2 + static_cast<int>(rng.next_below(max_alpha - 1));
    std::size_t total = 1;
    for (int m : alph) total *= m;
    std::vector<std::vector<int>> supp;
    ProductSpace sp(alph);
    for (std::size_t idx = 0; idx < total; ++idx)
      if (rng.bernoulli(0.4)) supp.push_back(sp.point_of(idx));
    if (supp.empty()) continue;
    try {
      return JointDistribution::uniform_on(alph, supp);
    } catch (const domain_error&) {
      continue;  // missing marginal support; redraw
    }
  }
}

void test_indexing(Checker& c, std::uint64_t seed) {
  ProductSpace sp({2, 3, 4});
  for (std::size_t i = 0; i < sp.total_size(); ++i)
    c.check(sp.index_of(sp.point_of(i)) == i, "index_of o point_of != id");
  c.check(sp.index_of({1, 2, 3}) == 23, "lexicographic rank mismatch");
  auto s1 = sample_subset(12, 0.5, seed);
  auto s2 = sample_subset(12, 0.5, seed);
  c.check(s1.bits == s2.bits, "sample_subset not deterministic");
  c.check(sample_subset(10, 0.0, seed).count() == 0, "delta=0 not empty");
  c.check(sample_subset(10, 1.0, seed).count() == 10, "delta=1 not full");
}

void test_distributions(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 50; ++t) {
    auto mu = random_support_dist(rng, 3, 4);
    Rational sum = 0;
    for (const auto& a : mu.atoms()) sum += a.p;
    c.check(sum == 1, "atom probabilities do not sum to 1");
    auto rep = classify(mu);
    try {
      rep.check_chain();
    } catch (const consistency_error&) {
      c.check(false, "implication chain violated");
    }
  }
  auto mu = fixtures::ap3_full(3);
  auto m1 = mu.marginal({0});
  c.check(m1.atoms().size() == 3 && m1.atoms()[0].p == Rational(1, 3),
          "AP marginal not uniform");
}

void test_embeddings(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  c.check(detect_abelian_embedding(fixtures::ap3_full(3)).has_value(),
          "ap3_full_p3 lost its embedding");
  c.check(!detect_z_embedding(fixtures::ap3_somewhat(5)).has_value(),
          "ap3_somewhat_p5 should have no Z-embedding");
  c.check(detect_z_embedding(fixtures::ap3_restricted(3)).has_value(),
          "ap3_restricted_p3 should have a Z-embedding");
  for (int t = 0; t < 25; ++t) {
    auto mu = random_support_dist(rng, 3, 3);
    if (auto w = detect_abelian_embedding(mu))
      c.check(verify_witness(mu, *w), "detector returned a bad witness");
  }
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  auto snf = smith_normal_form(m);
  c.check(snf.divisors.size() == 2 && snf.divisors[0] == 1 && snf.divisors[1] == 6,
          "diag(2,3) should have divisors (1,6)");
}

void test_analysis(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  ProductSpace sp({3, 3});
  for (int t = 0; t < 10; ++t) {
    auto f = random_table(sp, rng);
    auto spec = fourier_transform(f);
    auto back = inverse_fourier(spec);
    double err = 0;
    for (std::size_t i = 0; i < f.values().size(); ++i)
      err = std::max(err, std::abs(f[i] - back[i]));
    c.check(err < 1e-12, "Fourier inversion drift");
    auto profile = degree_profile(f);
    double total = 0;
    for (double p : profile) total += p;
    c.check(std::abs(total - f.norm2_sq()) < 1e-10, "degree profile mass leak");
  }
  auto f = random_table(ProductSpace({2, 2, 2}), rng);
  auto noisy = noise_apply(f, 0.3);
  c.check(std::abs(noisy.expectation() - f.expectation()) < 1e-12,
          "noise operator shifted the mean");
  c.check(noisy.norm2() <= f.norm2() + 1e-12, "noise operator expanded the norm");
}

void test_norms(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  ProductSpace sp({3, 3});
  for (int t = 0; t < 5; ++t) {
    auto f = random_table(sp, rng);
    auto g1 = gowers_norm(f, 1);
    c.check(std::abs(g1.value - std::abs(f.expectation())) < 1e-12,
            "U^1 should equal |E f|");
    auto favg = swap_form(f, f, f, f);
    auto fex = swap_via_exchange(f, f, f, f);
    c.check(std::abs(favg.value - fex.value) < 1e-12,
            "swap dual paths disagree");
  }
  ProductSpace line({4});
  auto f = random_table(line, rng);
  auto sn = swap_norm(f);
  c.check(std::abs(sn.value - f.norm2()) < 1e-12, "swap norm at n=1 != L2");
}

void test_correlations(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  auto mu = fixtures::ap3_full(3);
  auto w = detect_abelian_embedding(mu);
  c.check(w.has_value(), "ap3_full lost its witness");
  if (w) {
    EmbeddingCharacters chars;
    chars.finite.assign(3, std::vector<long long>(w->group.rank(), 1));
    auto fs = build_counterexample(mu, *w, chars);
    Complex corr = kwise_correlation(mu, fs);
    c.check(std::abs(std::abs(corr) - 1.0) < 1e-9,
            "counterexample correlation modulus != 1");
  }
  ProductSpace sp({2, 2});
  auto f = random_table(sp, rng);
  auto rep = product_correlation_search(f, {10, 200, seed});
  c.check(std::abs(rep.reevaluate(f) - rep.value) < 1e-9,
          "certificate does not reproduce its value");
}

void test_patterns(Checker& c, std::uint64_t) {
  auto fam = PatternFamily::ap3(PatternKind::ap3_full, 3);
  c.check(count_patterns(PointSet::full(3, 1), fam) == 6, "F_3 AP count != 6");
  auto lines = PatternFamily::line(3);
  for (int n = 1; n <= 4; ++n) {
    long long want = 1, pow3 = 1;
    for (int i = 0; i < n; ++i) {
      want *= 4;
      pow3 *= 3;
    }
    c.check(total_instances(ProductSpace::power(3, n), lines) == want - pow3,
            "line count != 4^n - 3^n");
  }
  auto full = PointSet::full(3, 2);
  auto step = meshulam_step(full, 3);
  c.check(std::holds_alternative<ApWitness>(step), "dense set should contain an AP");
}

void test_csp(Checker& c, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 20; ++t) {
    LinSystem sys;
    sys.p = 3;
    sys.nvars = 4;
    for (int e = 0; e < 5; ++e)
      sys.eqs.push_back({1 + static_cast<int>(rng.next_below(2)),
                         1 + static_cast<int>(rng.next_below(2)),
                         1 + static_cast<int>(rng.next_below(2)),
                         static_cast<int>(rng.next_below(3)),
                         static_cast<int>(rng.next_below(4)),
                         static_cast<int>(rng.next_below(4)),
                         static_cast<int>(rng.next_below(4))});
    auto sol = gauss_solve_3lin(sys);
    auto brute = csp_value_bruteforce(lin_system_to_csp(sys));
    c.check(sol.has_value() == (brute.value == 1),
            "elimination and brute force disagree on satisfiability");
  }
  for (const auto& p : fixtures::three_sat_predicates())
    c.check(p.satisfying_count() == 7, "3-SAT predicate should have 7 models");
}

void test_games(Checker& c, std::uint64_t) {
  Game g;
  g.players = 2;
  g.vertex_counts = {1, 1};
  g.alphabets = {2, 2};
  Game::Edge e;
  e.verts = {0, 0};
  e.accepted = {{0, 1}, {1, 0}};
  g.edges = {e};
  auto v = game_value(g);
  c.check(v.value == 1, "single satisfiable edge should have value 1");
  auto g2 = repeat_game(g, 2);
  c.check(game_value(g2).value == 1, "repetition of a value-1 game lost value");
}

}  // namespace

std::vector<std::string> module_names() {
  return {"indexing", "distributions", "embeddings", "analysis", "norms",
          "correlations", "patterns", "csp", "games"};
}

Result run(const std::string& module, std::uint64_t seed) {
  Checker c;
  if (module == "indexing")
    test_indexing(c, seed);
  else if (module == "distributions")
    test_distributions(c, seed);
  else if (module == "embeddings")
    test_embeddings(c, seed);
  else if (module == "analysis")
    test_analysis(c, seed);
  else if (module == "norms")
    test_norms(c, seed);
  else if (module == "correlations")
    test_correlations(c, seed);
  else if (module == "patterns")
    test_patterns(c, seed);
  else if (module == "csp")
    test_csp(c, seed);
  else if (module == "games")
    test_games(c, seed);
  else {
    c.res.passed = false;
    c.res.failures.push_back("unknown module: " + module);
  }
  return c.res;
}

}  // namespace kwise::selftest
