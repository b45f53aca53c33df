#include "kwise/analysis.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "kwise/errors.hpp"

namespace kwise {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::vector<double> point_weights(const FunctionTable& f) {
  std::vector<double> w{1.0};
  for (int i = 0; i < f.space().arity(); ++i) {
    std::vector<double> next(w.size() * f.space().radix(i));
    std::size_t pos = 0;
    for (double a : w)
      for (double b : f.weights()[i]) next[pos++] = a * b;
    w = std::move(next);
  }
  return w;
}

double weighted_norm_sq(const std::vector<Complex>& v,
                        const std::vector<double>& w) {
  double acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * std::norm(v[i]);
  return acc;
}

// In-place: replace each axis-i fiber by its nu_i-average (constant fiber).
void average_axis(std::vector<Complex>& vals, const ProductSpace& sp, int axis,
                  const std::vector<double>& nu) {
  std::size_t s = sp.stride(axis);
  std::size_t m = static_cast<std::size_t>(sp.radix(axis));
  std::size_t block = s * m;
  for (std::size_t base = 0; base < vals.size(); base += block)
    for (std::size_t off = 0; off < s; ++off) {
      Complex acc = 0;
      for (std::size_t t = 0; t < m; ++t) acc += nu[t] * vals[base + off + t * s];
      for (std::size_t t = 0; t < m; ++t) vals[base + off + t * s] = acc;
    }
}

void difference_axis(std::vector<Complex>& vals, const ProductSpace& sp,
                     int axis, const std::vector<double>& nu) {
  std::size_t s = sp.stride(axis);
  std::size_t m = static_cast<std::size_t>(sp.radix(axis));
  std::size_t block = s * m;
  for (std::size_t base = 0; base < vals.size(); base += block)
    for (std::size_t off = 0; off < s; ++off) {
      Complex acc = 0;
      for (std::size_t t = 0; t < m; ++t) acc += nu[t] * vals[base + off + t * s];
      for (std::size_t t = 0; t < m; ++t) vals[base + off + t * s] -= acc;
    }
}

void require_full_support(const FunctionTable& f) {
  for (const auto& coord : f.measure())
    for (const auto& p : coord)
      if (p == 0)
        throw domain_error("zero_mass_symbol",
                           "base measure must have full support per coordinate");
}

// Shared DFS over the 2^n operator products prod_{i in S} D_i prod A_i.
// visit(mask, values) is called once per subset with the component's values.
template <typename Visit>
void efron_stein_dfs(const FunctionTable& f, Visit&& visit) {
  require_full_support(f);
  int n = f.space().arity();
  if (n > 62) throw domain_error("too_many_coordinates", "arity above desk scale");
  std::vector<std::vector<Complex>> stack(n + 1);
  stack[0] = f.values();

  // Iterative DFS with explicit branch state; branch 0 applies A_i, 1 applies D_i.
  std::vector<int> branch(n, -1);
  int depth = 0;
  std::uint64_t mask = 0;
  while (depth >= 0) {
    if (depth == n) {
      visit(mask, stack[n]);
      --depth;
      continue;
    }
    if (branch[depth] == 1) {  // both branches done
      branch[depth] = -1;
      --depth;
      continue;
    }
    ++branch[depth];
    stack[depth + 1] = stack[depth];
    if (branch[depth] == 0) {
      average_axis(stack[depth + 1], f.space(), depth, f.weights()[depth]);
      mask &= ~(1ull << depth);
    } else {
      difference_axis(stack[depth + 1], f.space(), depth, f.weights()[depth]);
      mask |= 1ull << depth;
    }
    ++depth;
  }
}

}  // namespace

Complex character_value(const ProductSpace& group, const std::vector<int>& alpha,
                        const std::vector<int>& x) {
  double phase = 0;
  for (int i = 0; i < group.arity(); ++i)
    phase += static_cast<double>(alpha[i]) * static_cast<double>(x[i]) /
             static_cast<double>(group.radix(i));
  return std::polar(1.0, kTau * phase);
}

FunctionTable character_table(const ProductSpace& group,
                              const std::vector<int>& alpha) {
  std::vector<Complex> vals(group.total_size());
  std::vector<int> x;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    group.point_of(i, x);
    vals[i] = character_value(group, alpha, x);
  }
  return FunctionTable::uniform(group, std::move(vals));
}

FourierSpectrum fourier_transform(const FunctionTable& f) {
  if (!f.measure_is_uniform())
    throw domain_error("nonuniform_measure",
                       "Fourier transform needs the uniform measure; use the "
                       "Efron-Stein decomposition for general product measures");
  const ProductSpace& sp = f.space();
  std::vector<Complex> vals = f.values();
  // One cyclic DFT per axis; the product of the per-axis 1/m factors is the
  // expectation normalization.
  for (int axis = 0; axis < sp.arity(); ++axis) {
    std::size_t s = sp.stride(axis);
    std::size_t m = static_cast<std::size_t>(sp.radix(axis));
    std::vector<Complex> roots(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t t = 0; t < m; ++t)
        roots[a * m + t] = std::polar(
            1.0 / static_cast<double>(m),
            -kTau * static_cast<double>(a * t) / static_cast<double>(m));
    std::vector<Complex> fiber(m);
    std::size_t block = s * m;
    for (std::size_t base = 0; base < vals.size(); base += block)
      for (std::size_t off = 0; off < s; ++off) {
        for (std::size_t t = 0; t < m; ++t) fiber[t] = vals[base + off + t * s];
        for (std::size_t a = 0; a < m; ++a) {
          Complex acc = 0;
          for (std::size_t t = 0; t < m; ++t) acc += roots[a * m + t] * fiber[t];
          vals[base + off + a * s] = acc;
        }
      }
  }

  double parseval = 0;
  for (const auto& c : vals) parseval += std::norm(c);
  double direct = f.norm2_sq();
  if (std::abs(parseval - direct) > kExactTol * std::max(1.0, direct))
    throw consistency_error("parseval_violation",
                            "sum of squared coefficients != E|f|^2");
  return FourierSpectrum{sp, std::move(vals)};
}

FunctionTable inverse_fourier(const FourierSpectrum& spec) {
  const ProductSpace& sp = spec.group;
  std::vector<Complex> vals = spec.coeff;
  for (int axis = 0; axis < sp.arity(); ++axis) {
    std::size_t s = sp.stride(axis);
    std::size_t m = static_cast<std::size_t>(sp.radix(axis));
    std::vector<Complex> roots(m * m);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t a = 0; a < m; ++a)
        roots[x * m + a] = std::polar(
            1.0, kTau * static_cast<double>(x * a) / static_cast<double>(m));
    std::vector<Complex> fiber(m);
    std::size_t block = s * m;
    for (std::size_t base = 0; base < vals.size(); base += block)
      for (std::size_t off = 0; off < s; ++off) {
        for (std::size_t a = 0; a < m; ++a) fiber[a] = vals[base + off + a * s];
        for (std::size_t x = 0; x < m; ++x) {
          Complex acc = 0;
          for (std::size_t a = 0; a < m; ++a) acc += roots[x * m + a] * fiber[a];
          vals[base + off + x * s] = acc;
        }
      }
  }
  return FunctionTable::uniform(sp, std::move(vals));
}

EfronSteinDecomposition efron_stein(const FunctionTable& f) {
  EfronSteinDecomposition dec;
  efron_stein_dfs(f, [&](std::uint64_t mask, const std::vector<Complex>& vals) {
    dec.components.emplace(
        mask, FunctionTable(f.space(), f.measure(), vals));
  });
  return dec;
}

std::vector<double> degree_profile(const FunctionTable& f) {
  auto w = point_weights(f);
  std::vector<double> profile(f.space().arity() + 1, 0.0);
  efron_stein_dfs(f, [&](std::uint64_t mask, const std::vector<Complex>& vals) {
    profile[std::popcount(mask)] += weighted_norm_sq(vals, w);
  });
  return profile;
}

std::pair<double, double> degree_mass(const FunctionTable& f, int d) {
  auto profile = degree_profile(f);
  double low = 0, high = 0;
  for (std::size_t lvl = 0; lvl < profile.size(); ++lvl)
    (static_cast<int>(lvl) <= d ? low : high) += profile[lvl];
  return {low, high};
}

FunctionTable low_degree_projection(const FunctionTable& f, int d) {
  std::vector<Complex> acc(f.space().total_size(), 0.0);
  efron_stein_dfs(f, [&](std::uint64_t mask, const std::vector<Complex>& vals) {
    if (std::popcount(mask) > d) return;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += vals[i];
  });
  return FunctionTable(f.space(), f.measure(), std::move(acc));
}

double low_degree_correlation(const FunctionTable& f, int d) {
  auto [low, high] = degree_mass(f, d);
  (void)high;
  return std::sqrt(std::max(0.0, low));
}

FunctionTable noise_apply(const FunctionTable& f, double eps) {
  return noise_apply(f, eps, f.measure());
}

FunctionTable noise_apply(const FunctionTable& f, double eps,
                          const std::vector<std::vector<Rational>>& nu) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw domain_error("bad_eps", "noise rate must be in [0,1]");
  if (static_cast<int>(nu.size()) != f.space().arity())
    throw domain_error("bad_measure", "one resampling distribution per coordinate");
  std::vector<Complex> vals = f.values();
  for (int axis = 0; axis < f.space().arity(); ++axis) {
    if (static_cast<int>(nu[axis].size()) != f.space().radix(axis))
      throw domain_error("bad_measure", "resampling distribution arity mismatch");
    std::vector<double> w(nu[axis].size());
    for (std::size_t s = 0; s < w.size(); ++s) w[s] = to_double(nu[axis][s]);
    std::vector<Complex> averaged = vals;
    average_axis(averaged, f.space(), axis, w);
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = (1.0 - eps) * vals[i] + eps * averaged[i];
  }
  return FunctionTable(f.space(), f.measure(), std::move(vals));
}

FunctionTable make_high_degree(const FunctionTable& g, double eps, int d) {
  if (!(eps > 0.0) || d < 1 || eps > static_cast<double>(d))
    throw domain_error("bad_params", "need 0 < eps <= d");
  FunctionTable smoothed = noise_apply(g, eps / static_cast<double>(d));
  std::vector<Complex> vals(g.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = g[i] - smoothed[i];
  return FunctionTable(g.space(), g.measure(), std::move(vals));
}

}  // namespace kwise
