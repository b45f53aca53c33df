#pragma once

// Brute-force oracles for the test suites. These deliberately share no code
// with the library paths they check.

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "kwise/distribution.hpp"
#include "kwise/function_table.hpp"

namespace kwise::oracle {

// Exhaustive search for a non-constant Z_m embedding of a 3-ary support,
// m = 2..m_max: enumerate sigma_1 and sigma_2 outright, propagate sigma_3
// through the atoms, check consistency and non-constancy.
struct MapWitness {
  int modulus;
  std::vector<std::vector<int>> sigma;
};

inline std::optional<MapWitness> abelian_embedding_by_enumeration(
    const JointDistribution& mu, int m_max = 6) {
  if (mu.arity() != 3) throw domain_error("oracle", "k=3 only");
  int m1 = mu.alphabet(0), m2 = mu.alphabet(1), m3 = mu.alphabet(2);
  const auto& atoms = mu.atoms();
  for (int m = 2; m <= m_max; ++m) {
    std::vector<int> s1(m1, 0), s2(m2, 0), s3(m3, -1);
    std::size_t count1 = 1, count2 = 1;
    for (int i = 0; i < m1; ++i) count1 *= m;
    for (int i = 0; i < m2; ++i) count2 *= m;
    for (std::size_t c1 = 0; c1 < count1; ++c1) {
      std::size_t t = c1;
      for (int i = 0; i < m1; ++i) {
        s1[i] = static_cast<int>(t % m);
        t /= m;
      }
      for (std::size_t c2 = 0; c2 < count2; ++c2) {
        t = c2;
        for (int i = 0; i < m2; ++i) {
          s2[i] = static_cast<int>(t % m);
          t /= m;
        }
        std::fill(s3.begin(), s3.end(), -1);
        bool ok = true;
        for (const auto& a : atoms) {
          int need = ((-(s1[a.tuple[0]] + s2[a.tuple[1]])) % m + m) % m;
          int& slot = s3[a.tuple[2]];
          if (slot < 0)
            slot = need;
          else if (slot != need) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        bool c_1 = std::all_of(s1.begin(), s1.end(),
                               [&](int v) { return v == s1[0]; });
        bool c_2 = std::all_of(s2.begin(), s2.end(),
                               [&](int v) { return v == s2[0]; });
        bool c_3 = std::all_of(s3.begin(), s3.end(),
                               [&](int v) { return v == s3[0]; });
        if (c_1 && c_2 && c_3) continue;
        return MapWitness{m, {s1, s2, s3}};
      }
    }
  }
  return std::nullopt;
}

// Counts ordered 3-AP triples inside A by scanning all point triples and
// testing the arithmetic relation digitwise (step restricted to D).
inline long long count_ap3_by_triples(const ProductSpace& sp,
                                      const std::vector<std::uint8_t>& member,
                                      int p, const std::vector<int>& step_set) {
  long long count = 0;
  std::vector<int> a, b, c;
  for (std::size_t i = 0; i < sp.total_size(); ++i) {
    if (!member[i]) continue;
    sp.point_of(i, a);
    for (std::size_t j = 0; j < sp.total_size(); ++j) {
      if (!member[j]) continue;
      sp.point_of(j, b);
      bool ok = true, nonzero = false;
      std::vector<int> d(sp.arity());
      for (int t = 0; t < sp.arity() && ok; ++t) {
        d[t] = ((b[t] - a[t]) % p + p) % p;
        ok = std::find(step_set.begin(), step_set.end(), d[t]) != step_set.end();
        nonzero = nonzero || d[t] != 0;
      }
      if (!ok || !nonzero) continue;
      std::size_t kidx = 0;
      for (int t = 0; t < sp.arity(); ++t) kidx = kidx * p + (b[t] + d[t]) % p;
      if (member[kidx]) ++count;
    }
  }
  return count;
}

// Largest singular value of the nu-weighted matrix B[s,t] =
// sqrt(nu1 nu2) f(s,t): the true optimum of the rank-one correlation at n=2.
inline double top_singular_value(const FunctionTable& f) {
  const ProductSpace& sp = f.space();
  if (sp.arity() != 2) throw domain_error("oracle", "n=2 only");
  int m1 = sp.radix(0), m2 = sp.radix(1);
  std::vector<std::vector<Complex>> b(m1, std::vector<Complex>(m2));
  for (int s = 0; s < m1; ++s)
    for (int t = 0; t < m2; ++t)
      b[s][t] = std::sqrt(f.weights()[0][s] * f.weights()[1][t]) *
                f[static_cast<std::size_t>(s) * m2 + t];
  // Power iteration on B^dagger B with a deterministic start.
  std::vector<Complex> v(m2, Complex(1.0, 0.25));
  double lambda = 0;
  for (int it = 0; it < 3000; ++it) {
    std::vector<Complex> bv(m1, 0.0);
    for (int s = 0; s < m1; ++s)
      for (int t = 0; t < m2; ++t) bv[s] += b[s][t] * v[t];
    std::vector<Complex> next(m2, 0.0);
    for (int t = 0; t < m2; ++t)
      for (int s = 0; s < m1; ++s) next[t] += std::conj(b[s][t]) * bv[s];
    double nrm = 0;
    for (const auto& x : next) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0) return 0;
    for (auto& x : next) x /= nrm;
    lambda = nrm;
    v = std::move(next);
  }
  return std::sqrt(lambda);
}

}  // namespace kwise::oracle
