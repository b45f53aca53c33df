#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kwise/distribution.hpp"
#include "kwise/function_table.hpp"
#include "kwise/rng.hpp"

namespace kwise::testutil {

inline Complex random_disk(Rng& rng) {
  for (;;) {
    Complex v(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
    if (std::abs(v) <= 1) return v;
  }
}

// 1-bounded complex table under the uniform measure.
inline FunctionTable random_bounded(const ProductSpace& sp, Rng& rng) {
  std::vector<Complex> vals(sp.total_size());
  for (auto& v : vals) v = random_disk(rng);
  return FunctionTable::uniform(sp, std::move(vals));
}

inline FunctionTable random_unimodular(const ProductSpace& sp, Rng& rng) {
  std::vector<Complex> vals(sp.total_size());
  for (auto& v : vals) v = std::polar(1.0, 2 * 3.14159265358979 * rng.next_double());
  return FunctionTable::uniform(sp, std::move(vals));
}

// Uniform distribution on a random support with full marginal support.
inline JointDistribution random_support(Rng& rng, int k, int alpha_lo, int alpha_hi,
                                        double keep = 0.4) {
  for (;;) {
    std::vector<int> alph(k);
    for (int i = 0; i < k; ++i)
      alph[i] = alpha_lo +
                static_cast<int>(rng.next_below(alpha_hi - alpha_lo + 1));
    ProductSpace sp(alph);
    std::vector<std::vector<int>> supp;
    for (std::size_t idx = 0; idx < sp.total_size(); ++idx)
      if (rng.bernoulli(keep)) supp.push_back(sp.point_of(idx));
    if (supp.empty()) continue;
    try {
      return JointDistribution::uniform_on(alph, supp);
    } catch (const domain_error&) {
    }
  }
}

// Random distribution with non-uniform rational weights on a random support.
inline JointDistribution random_weighted(Rng& rng, int k, int alpha_lo,
                                         int alpha_hi, double keep = 0.45) {
  for (;;) {
    std::vector<int> alph(k);
    for (int i = 0; i < k; ++i)
      alph[i] = alpha_lo +
                static_cast<int>(rng.next_below(alpha_hi - alpha_lo + 1));
    ProductSpace sp(alph);
    std::vector<JointDistribution::Atom> atoms;
    long long total = 0;
    std::vector<long long> weights;
    std::vector<std::vector<int>> tuples;
    for (std::size_t idx = 0; idx < sp.total_size(); ++idx)
      if (rng.bernoulli(keep)) {
        long long w = 1 + static_cast<long long>(rng.next_below(9));
        weights.push_back(w);
        total += w;
        tuples.push_back(sp.point_of(idx));
      }
    if (tuples.empty()) continue;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      atoms.push_back({tuples[i], Rational(weights[i], total)});
    try {
      return JointDistribution(alph, std::move(atoms));
    } catch (const domain_error&) {
    }
  }
}

}  // namespace kwise::testutil
