#include "kwise/patterns.hpp"

#include <algorithm>
#include <cmath>

namespace kwise {

namespace {

bool odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

int step_set_size(const PatternFamily& f) {
  switch (f.kind) {
    case PatternKind::ap3_full:
      return f.p;
    case PatternKind::ap3_somewhat:
      return 3;
    case PatternKind::ap3_restricted:
      return 2;
    default:
      return 0;
  }
}

}  // namespace

PatternFamily PatternFamily::ap3(PatternKind kind, int p) {
  if (kind == PatternKind::comb_line)
    throw domain_error("bad_family", "use PatternFamily::line for combinatorial lines");
  if (!odd_prime(p)) throw domain_error("bad_prime", "AP families need an odd prime");
  if (kind == PatternKind::ap3_somewhat && p < 3)
    throw domain_error("bad_prime", "somewhat-restricted steps need p >= 3");
  return PatternFamily{kind, p, 3};
}

PatternFamily PatternFamily::line(int k) {
  if (k < 3) throw domain_error("bad_family", "combinatorial lines need k >= 3");
  return PatternFamily{PatternKind::comb_line, 3, k};
}

int PatternFamily::points_per_instance() const {
  return kind == PatternKind::comb_line ? k : 3;
}

PointSet::PointSet(ProductSpace sp, std::vector<std::uint8_t> mask)
    : space(std::move(sp)), membership(std::move(mask)) {
  if (membership.size() != space.total_size())
    throw domain_error("bad_set", "membership mask length mismatch");
  for (int i = 1; i < space.arity(); ++i)
    if (space.radix(i) != space.radix(0))
      throw domain_error("bad_set", "point sets live in equal-radix spaces");
}

PointSet PointSet::empty(int radix, int n) {
  ProductSpace sp = ProductSpace::power(radix, n);
  std::vector<std::uint8_t> mask(sp.total_size(), 0);
  return PointSet(std::move(sp), std::move(mask));
}

PointSet PointSet::full(int radix, int n) {
  ProductSpace sp = ProductSpace::power(radix, n);
  std::vector<std::uint8_t> mask(sp.total_size(), 1);
  return PointSet(std::move(sp), std::move(mask));
}

PointSet PointSet::of_indices(int radix, int n, const std::vector<std::size_t>& idx) {
  PointSet s = PointSet::empty(radix, n);
  for (std::size_t i : idx) {
    if (i >= s.membership.size()) throw domain_error("bad_set", "index out of range");
    s.membership[i] = 1;
  }
  return s;
}

std::size_t PointSet::count() const {
  std::size_t c = 0;
  for (auto b : membership) c += b;
  return c;
}

Rational PointSet::density() const {
  return Rational(BigInt(count()), BigInt(space.total_size()));
}

JointDistribution pattern_distribution(const PatternFamily& family) {
  if (family.kind == PatternKind::comb_line) {
    int k = family.k;
    std::vector<std::vector<int>> supp;
    for (int t = 0; t < k; ++t) supp.push_back(std::vector<int>(k, t));
    std::vector<int> run(k);
    for (int t = 0; t < k; ++t) run[t] = t;
    supp.push_back(run);
    return JointDistribution::uniform_on(std::vector<int>(k, k), supp);
  }
  int p = family.p;
  std::vector<std::vector<int>> supp;
  for (int x = 0; x < p; ++x)
    for (int a = 0; a < step_set_size(family); ++a)
      supp.push_back({x, (x + a) % p, (x + 2 * a) % p});
  return JointDistribution::uniform_on({p, p, p}, supp);
}

void for_each_instance(const ProductSpace& space, const PatternFamily& family,
                       const std::function<void(const std::vector<std::size_t>&)>& fn) {
  int n = space.arity();
  if (space.radix(0) != family.ambient_radix())
    throw domain_error("bad_set", "ambient space does not match the family");

  if (family.kind == PatternKind::comb_line) {
    int k = family.k;
    // Wildcard words over {0..k-1, *}; skip the all-constant ones.
    std::vector<int> word(n, 0);  // 0..k-1 constant, k = wildcard
    std::vector<std::size_t> pts(k);
    while (true) {
      bool has_wild = std::find(word.begin(), word.end(), k) != word.end();
      if (has_wild) {
        for (int t = 0; t < k; ++t) {
          std::size_t idx = 0;
          for (int j = 0; j < n; ++j)
            idx = idx * k + (word[j] == k ? t : word[j]);
          pts[t] = idx;
        }
        fn(pts);
      }
      int j = n - 1;
      while (j >= 0 && word[j] == k) word[j--] = 0;
      if (j < 0) break;
      ++word[j];
    }
    return;
  }

  int p = family.p;
  int steps = step_set_size(family);
  std::vector<int> a(n, 0);
  std::vector<int> x(n);
  std::vector<std::size_t> pts(3);
  while (true) {
    // next step vector (skip the zero vector)
    int j = n - 1;
    while (j >= 0 && a[j] == steps - 1) a[j--] = 0;
    if (j < 0) break;
    ++a[j];
    for (std::size_t xi = 0; xi < space.total_size(); ++xi) {
      space.point_of(xi, x);
      std::size_t i2 = 0, i3 = 0;
      for (int t = 0; t < n; ++t) {
        i2 = i2 * p + (x[t] + a[t]) % p;
        i3 = i3 * p + (x[t] + 2 * a[t]) % p;
      }
      pts[0] = xi;
      pts[1] = i2;
      pts[2] = i3;
      fn(pts);
    }
  }
}

long long count_patterns(const PointSet& a, const PatternFamily& family) {
  long long count = 0;
  for_each_instance(a.space, family, [&](const std::vector<std::size_t>& pts) {
    for (std::size_t q : pts)
      if (!a.membership[q]) return;
    ++count;
  });
  return count;
}

long long total_instances(const ProductSpace& space, const PatternFamily& family) {
  long long count = 0;
  for_each_instance(space, family,
                    [&](const std::vector<std::size_t>&) { ++count; });
  return count;
}

ThreeApIdentity fourier_3ap_check(const PointSet& a, int p) {
  if (!odd_prime(p)) throw domain_error("bad_prime", "need an odd prime");
  if (a.space.radix(0) != p) throw domain_error("bad_set", "radix != p");
  const ProductSpace& sp = a.space;
  int n = sp.arity();
  FunctionTable f = normalized_indicator(sp, uniform_measure(sp), a.membership);

  // Direct double sum over (x,a), a unrestricted including 0.
  double lhs = 0;
  std::vector<int> x, d;
  for (std::size_t ai = 0; ai < sp.total_size(); ++ai) {
    sp.point_of(ai, d);
    for (std::size_t xi = 0; xi < sp.total_size(); ++xi) {
      sp.point_of(xi, x);
      std::size_t i2 = 0, i3 = 0;
      for (int t = 0; t < n; ++t) {
        i2 = i2 * p + (x[t] + d[t]) % p;
        i3 = i3 * p + (x[t] + 2 * d[t]) % p;
      }
      lhs += f[xi].real() * f[i2].real() * f[i3].real();
    }
  }
  lhs /= static_cast<double>(sp.total_size()) * sp.total_size();

  FourierSpectrum spec = fourier_transform(f);
  Complex rhs = 0;
  std::vector<int> alpha;
  for (std::size_t ai = 0; ai < spec.coeff.size(); ++ai) {
    sp.point_of(ai, alpha);
    std::size_t neg2 = 0;
    for (int t = 0; t < n; ++t) neg2 = neg2 * p + ((-2 * alpha[t]) % p + p) % p;
    rhs += spec.coeff[ai] * spec.coeff[ai] * spec.coeff[neg2];
  }
  if (std::abs(lhs - rhs.real()) > 1e-10 || std::abs(rhs.imag()) > 1e-10)
    throw consistency_error("ap_identity_violation",
                            "direct AP average disagrees with the Fourier sum");
  return {lhs, rhs};
}

namespace {

std::optional<ApWitness> find_ap(const PointSet& a, int p) {
  const ProductSpace& sp = a.space;
  int n = sp.arity();
  std::vector<int> x, d;
  // Lexicographic over (x, a != 0).
  for (std::size_t xi = 0; xi < sp.total_size(); ++xi) {
    if (!a.membership[xi]) continue;
    sp.point_of(xi, x);
    for (std::size_t ai = 1; ai < sp.total_size(); ++ai) {
      sp.point_of(ai, d);
      std::size_t i2 = 0, i3 = 0;
      for (int t = 0; t < n; ++t) {
        i2 = i2 * p + (x[t] + d[t]) % p;
        i3 = i3 * p + (x[t] + 2 * d[t]) % p;
      }
      if (a.membership[i2] && a.membership[i3]) return ApWitness{{xi, i2, i3}};
    }
  }
  return std::nullopt;
}

bool increment_hypothesis(const PointSet& a, int p) {
  // mu(A) >= 2 p^{-n/2}  <=>  |A|^2 >= 4 p^n, exactly in integers.
  BigInt cnt = a.count();
  BigInt total = a.space.total_size();
  (void)p;
  return cnt * cnt >= 4 * total;
}

}  // namespace

MeshulamStep meshulam_step(const PointSet& a, int p) {
  if (!odd_prime(p)) throw domain_error("bad_prime", "need an odd prime");
  if (a.space.arity() < 1) throw domain_error("bad_dimension", "need n >= 1");
  if (a.space.radix(0) != p) throw domain_error("bad_set", "radix != p");

  if (auto w = find_ap(a, p)) {
    for (std::size_t q : w->points)
      if (!a.membership[q])
        throw consistency_error("bad_witness", "returned AP leaves the set");
    return *w;
  }

  const ProductSpace& sp = a.space;
  int n = sp.arity();
  FunctionTable f = normalized_indicator(sp, uniform_measure(sp), a.membership);
  FourierSpectrum spec = fourier_transform(f);
  std::size_t best_alpha = 1;
  double best_mag = -1;
  for (std::size_t ai = 1; ai < spec.coeff.size(); ++ai) {
    double m = std::abs(spec.coeff[ai]);
    if (m > best_mag + 1e-15) {  // ties: lexicographically smallest alpha
      best_mag = m;
      best_alpha = ai;
    }
  }
  std::vector<int> alpha = sp.point_of(best_alpha);

  std::vector<std::size_t> counts(p, 0);
  std::vector<int> x;
  for (std::size_t xi = 0; xi < sp.total_size(); ++xi) {
    if (!a.membership[xi]) continue;
    sp.point_of(xi, x);
    int dot = 0;
    for (int t = 0; t < n; ++t) dot = (dot + alpha[t] * x[t]) % p;
    ++counts[dot];
  }
  int best_c = 0;
  for (int c = 1; c < p; ++c)
    if (counts[c] > counts[best_c]) best_c = c;  // ties keep smallest c

  std::size_t coset_size = sp.total_size() / static_cast<std::size_t>(p);
  HyperplaneStep stepr{alpha, best_c,
                       Rational(BigInt(counts[best_c]), BigInt(coset_size)),
                       counts[best_c]};
  if (increment_hypothesis(a, p) && stepr.new_density < a.density())
    throw consistency_error("density_decrease",
                            "hyperplane step lost density despite the hypothesis");
  return stepr;
}

MeshulamTrace meshulam_run(const PointSet& a0, int p) {
  MeshulamTrace trace;
  PointSet a = a0;
  int codim = 0;
  while (true) {
    trace.entries.push_back({a.space.arity(), a.density(), codim});
    if (a.space.arity() == 0) {
      trace.outcome = MeshulamOutcome::dimension_exhausted;
      return trace;
    }
    MeshulamStep step = meshulam_step(a, p);
    if (std::holds_alternative<ApWitness>(step)) {
      trace.outcome = MeshulamOutcome::ap_found;
      trace.witness = std::get<ApWitness>(step);
      return trace;
    }
    if (!increment_hypothesis(a, p)) {
      trace.outcome = MeshulamOutcome::hypothesis_failed;
      return trace;
    }
    const auto& h = std::get<HyperplaneStep>(step);
    // Re-coordinatize the coset to F_p^{n-1}: solve for the first pivot
    // coordinate of alpha in terms of the remaining ones.
    const ProductSpace& sp = a.space;
    int n = sp.arity();
    int pivot = 0;
    while (h.alpha[pivot] == 0) ++pivot;
    int inv = 1;
    while (h.alpha[pivot] * inv % p != 1) ++inv;

    ProductSpace sub = ProductSpace::power(p, n - 1);
    std::vector<std::uint8_t> mask(sub.total_size());
    std::vector<int> y;
    for (std::size_t yi = 0; yi < sub.total_size(); ++yi) {
      sub.point_of(yi, y);
      int rest = 0;
      for (int t = 0, u = 0; t < n; ++t) {
        if (t == pivot) continue;
        rest = (rest + h.alpha[t] * y[u++]) % p;
      }
      int solved = ((h.coset - rest) % p + p) % p * inv % p;
      std::size_t idx = 0;
      for (int t = 0, u = 0; t < n; ++t)
        idx = idx * p + (t == pivot ? solved : y[u++]);
      mask[yi] = a.membership[idx];
    }
    a = PointSet(std::move(sub), std::move(mask));
    ++codim;
  }
}

FreeSetResult max_pattern_free(int n, const PatternFamily& family,
                               SearchMethod method, long long node_budget) {
  ProductSpace sp = ProductSpace::power(family.ambient_radix(), n);
  std::size_t npts = sp.total_size();

  // Instance list plus per-point incidence, for incremental conflict checks.
  std::vector<std::vector<std::size_t>> instances;
  for_each_instance(sp, family, [&](const std::vector<std::size_t>& pts) {
    instances.push_back(pts);
  });
  std::vector<std::vector<std::size_t>> by_point(npts);
  for (std::size_t id = 0; id < instances.size(); ++id)
    for (std::size_t q : instances[id]) by_point[q].push_back(id);

  auto completes_instance = [&](const std::vector<std::uint8_t>& chosen,
                                std::size_t q) {
    for (std::size_t id : by_point[q]) {
      bool all = true;
      for (std::size_t r : instances[id])
        if (r != q && !chosen[r]) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };

  FreeSetResult best;
  if (method == SearchMethod::exhaustive) {
    if (npts > 27)
      throw domain_error("too_large", "exhaustive subset scan needs <= 2^27 subsets");
    std::vector<std::uint8_t> chosen(npts, 0);
    for (std::uint64_t mask = 0; mask < (1ull << npts); ++mask) {
      std::size_t size = static_cast<std::size_t>(std::popcount(mask));
      if (size <= best.size && mask != 0) continue;
      for (std::size_t q = 0; q < npts; ++q) chosen[q] = (mask >> q) & 1;
      bool free = true;
      for (const auto& inst : instances) {
        bool all = true;
        for (std::size_t r : inst) all = all && chosen[r];
        if (all) {
          free = false;
          break;
        }
      }
      ++best.nodes;
      if (free && size >= best.size) {
        best.size = size;
        best.witness.clear();
        for (std::size_t q = 0; q < npts; ++q)
          if (chosen[q]) best.witness.push_back(q);
      }
    }
    best.optimal = true;
  } else {
    std::vector<std::uint8_t> chosen(npts, 0);
    std::vector<std::size_t> stack_set;
    long long nodes = 0;
    bool truncated = false;
    // Lexicographic DFS, include-branch first, remaining-capacity prune.
    auto dfs = [&](auto&& self, std::size_t next) -> void {
      if (truncated) return;
      if (++nodes > node_budget) {
        truncated = true;
        return;
      }
      if (stack_set.size() > best.size) {
        best.size = stack_set.size();
        best.witness = stack_set;
      }
      if (next >= npts) return;
      if (stack_set.size() + (npts - next) <= best.size) return;  // capacity bound
      if (!completes_instance(chosen, next)) {
        chosen[next] = 1;
        stack_set.push_back(next);
        self(self, next + 1);
        stack_set.pop_back();
        chosen[next] = 0;
      }
      self(self, next + 1);
    };
    dfs(dfs, 0);
    best.nodes = nodes;
    best.optimal = !truncated;
  }

  PointSet check = PointSet::of_indices(family.ambient_radix(), n, best.witness);
  if (count_patterns(check, family) != 0)
    throw consistency_error("bad_witness", "returned set is not pattern-free");
  return best;
}

}  // namespace kwise
