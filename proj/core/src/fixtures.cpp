#include "kwise/fixtures.hpp"

#include "kwise/patterns.hpp"

namespace kwise::fixtures {

JointDistribution ap3_full(int p) {
  return pattern_distribution(PatternFamily::ap3(PatternKind::ap3_full, p));
}

JointDistribution ap3_somewhat(int p) {
  return pattern_distribution(PatternFamily::ap3(PatternKind::ap3_somewhat, p));
}

JointDistribution ap3_restricted(int p) {
  return pattern_distribution(PatternFamily::ap3(PatternKind::ap3_restricted, p));
}

JointDistribution dhj3() {
  return pattern_distribution(PatternFamily::line(3));
}

JointDistribution full_support(int m, int k) {
  std::vector<std::vector<int>> supp;
  std::vector<int> t(k, 0);
  while (true) {
    supp.push_back(t);
    int j = k - 1;
    while (j >= 0 && t[j] == m - 1) t[j--] = 0;
    if (j < 0) break;
    ++t[j];
  }
  return JointDistribution::uniform_on(std::vector<int>(k, m), std::move(supp));
}

JointDistribution diagonal(int m, int k) {
  std::vector<std::vector<int>> supp;
  for (int s = 0; s < m; ++s) supp.push_back(std::vector<int>(k, s));
  return JointDistribution::uniform_on(std::vector<int>(k, m), std::move(supp));
}

std::vector<Predicate> three_sat_predicates() {
  std::vector<Predicate> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        std::vector<std::uint8_t> table(8, 1);
        table[static_cast<std::size_t>(a) * 4 + b * 2 + c] = 0;
        out.emplace_back(3, 2, std::move(table));
      }
  return out;
}

std::vector<Predicate> three_lin_predicates(int p) {
  std::vector<Predicate> out;
  for (int d = 0; d < p; ++d) {
    std::vector<std::uint8_t> table(static_cast<std::size_t>(p) * p * p);
    std::size_t idx = 0;
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        for (int z = 0; z < p; ++z) table[idx++] = (x + y + z) % p == d;
    out.emplace_back(3, p, std::move(table));
  }
  return out;
}

std::vector<NamedDistribution> all_distributions() {
  std::vector<NamedDistribution> out;
  for (int p : {3, 5}) {
    out.push_back({"ap3_full_p" + std::to_string(p), ap3_full(p)});
    out.push_back({"ap3_somewhat_p" + std::to_string(p), ap3_somewhat(p)});
    out.push_back({"ap3_restricted_p" + std::to_string(p), ap3_restricted(p)});
  }
  out.push_back({"dhj3", dhj3()});
  out.push_back({"full_support_3_3", full_support(3, 3)});
  return out;
}

}  // namespace kwise::fixtures
