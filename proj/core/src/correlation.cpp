#include "kwise/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "kwise/rng.hpp"

namespace kwise {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kExactCorrelationCap = 1e7;  // |supp|^n budget for exact sums

void check_function_shapes(const JointDistribution& mu,
                           const std::vector<FunctionTable>& fs, int n) {
  if (static_cast<int>(fs.size()) != mu.arity())
    throw domain_error("alphabet_mismatch", "one function per coordinate of mu");
  for (int i = 0; i < mu.arity(); ++i) {
    if (fs[i].space().arity() != n)
      throw domain_error("alphabet_mismatch", "function arity != n");
    for (int j = 0; j < n; ++j)
      if (fs[i].space().radix(j) != mu.alphabet(i))
        throw domain_error("alphabet_mismatch",
                           "function radix differs from its coordinate alphabet");
  }
}

double sup_product(const std::vector<FunctionTable>& fs) {
  double acc = 1;
  for (const auto& f : fs) acc *= f.sup_norm();
  return acc;
}

std::vector<double> atom_probs(const JointDistribution& mu) {
  std::vector<double> p;
  for (const auto& a : mu.atoms()) p.push_back(to_double(a.p));
  return p;
}

std::size_t sample_cumulative(const std::vector<double>& cum, double r) {
  auto it = std::upper_bound(cum.begin(), cum.end(), r);
  std::size_t idx = static_cast<std::size_t>(it - cum.begin());
  return std::min(idx, cum.size() - 1);
}

}  // namespace

FormReport kwise_correlation(const JointDistribution& mu,
                             const std::vector<FunctionTable>& fs, int n,
                             const std::optional<McParams>& mc) {
  check_function_shapes(mu, fs, n);
  const auto& atoms = mu.atoms();
  std::size_t na = atoms.size();
  int k = mu.arity();
  auto probs = atom_probs(mu);

  FormReport out;
  if (!mc) {
    if (std::pow(static_cast<double>(na), n) > kExactCorrelationCap)
      throw domain_error("too_large",
                         "|supp(mu)|^n over the exact budget; pass Monte Carlo parameters");
    // Odometer over atom choices per tensor coordinate, with incremental
    // per-player indices and probability.
    std::vector<std::size_t> digit(n, 0);
    std::vector<std::vector<std::size_t>> idx(k, std::vector<std::size_t>(n + 1, 0));
    std::vector<double> prob(n + 1, 1.0);
    Complex acc = 0;
    int depth = 0;
    while (true) {
      if (depth == n) {
        Complex term = prob[n];
        for (int i = 0; i < k; ++i) term *= fs[i][idx[i][n]];
        acc += term;
        --depth;
        while (depth >= 0 && ++digit[depth] == na) {
          digit[depth] = 0;
          --depth;
        }
        if (depth < 0) break;
      }
      const auto& a = atoms[digit[depth]];
      prob[depth + 1] = prob[depth] * probs[digit[depth]];
      for (int i = 0; i < k; ++i)
        idx[i][depth + 1] =
            idx[i][depth] * static_cast<std::size_t>(mu.alphabet(i)) +
            static_cast<std::size_t>(a.tuple[i]);
      ++depth;
    }
    out = {acc, "exact-sum", 0, 0.0};
  } else {
    std::vector<double> cum(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cum.begin());
    Rng rng(mc->seed);
    Complex sum = 0;
    double sum_sq = 0;
    for (std::size_t it = 0; it < mc->samples; ++it) {
      std::vector<std::size_t> idx(k, 0);
      for (int j = 0; j < n; ++j) {
        std::size_t a = sample_cumulative(cum, rng.next_double());
        for (int i = 0; i < k; ++i)
          idx[i] = idx[i] * static_cast<std::size_t>(mu.alphabet(i)) +
                   static_cast<std::size_t>(atoms[a].tuple[i]);
      }
      Complex v = 1;
      for (int i = 0; i < k; ++i) v *= fs[i][idx[i]];
      sum += v;
      sum_sq += std::norm(v);
    }
    double nn = static_cast<double>(mc->samples);
    Complex mean = sum / nn;
    double var = std::max(0.0, sum_sq / nn - std::norm(mean));
    out = {mean, "monte-carlo", mc->samples, std::sqrt(var / nn)};
  }

  double bound = sup_product(fs) + 1e-9 + 4 * out.stderr_est;
  if (std::abs(out.value) > bound)
    throw consistency_error("modulus_bound_violation",
                            "correlation exceeds the product of sup norms");
  return out;
}

Complex kwise_correlation(const JointDistribution& mu,
                          const std::vector<ProductFunction>& fs) {
  if (static_cast<int>(fs.size()) != mu.arity())
    throw domain_error("alphabet_mismatch", "one function per coordinate of mu");
  int n = fs[0].arity();
  for (int i = 0; i < mu.arity(); ++i) {
    if (fs[i].arity() != n)
      throw domain_error("alphabet_mismatch", "product functions must share arity");
    for (int j = 0; j < n; ++j)
      if (fs[i].radices()[j] != mu.alphabet(i))
        throw domain_error("alphabet_mismatch", "factor radix mismatch");
  }
  auto probs = atom_probs(mu);
  // The expectation factorizes across tensor coordinates.
  Complex acc = 1;
  for (int j = 0; j < n; ++j) {
    Complex coord = 0;
    for (std::size_t a = 0; a < mu.atoms().size(); ++a) {
      Complex term = probs[a];
      for (int i = 0; i < mu.arity(); ++i)
        term *= fs[i].factors()[j][mu.atoms()[a].tuple[i]];
      coord += term;
    }
    acc *= coord;
  }
  return acc;
}

std::vector<ProductFunction> build_counterexample(const JointDistribution& mu,
                                                  const EmbeddingWitness& w,
                                                  const EmbeddingCharacters& chars) {
  if (!verify_witness(mu, w))
    throw domain_error("invalid_witness", "witness fails verification against mu");
  int n;
  if (w.integer_target) {
    n = static_cast<int>(chars.thetas.size());
    for (double theta : chars.thetas)
      if (!(theta > 0.0 && theta < 1.0))
        throw domain_error("trivial_character", "theta must lie strictly in (0,1)");
  } else {
    n = static_cast<int>(chars.finite.size());
    for (const auto& c : chars.finite) {
      if (static_cast<int>(c.size()) != w.group.rank())
        throw domain_error("bad_character", "one index per cyclic factor required");
      bool trivial = true;
      for (int r = 0; r < w.group.rank(); ++r)
        if (c[r] % w.group.orders[r] != 0) trivial = false;
      if (trivial)
        throw domain_error("trivial_character", "character is trivial on the group");
    }
  }
  if (n < 1) throw domain_error("bad_character", "need at least one coordinate");

  std::vector<ProductFunction> out;
  for (int i = 0; i < mu.arity(); ++i) {
    std::vector<Rational> nu_i = mu.marginal_vector(i);
    std::vector<std::vector<Rational>> measure(n, nu_i);
    std::vector<std::vector<Complex>> factors(n);
    for (int j = 0; j < n; ++j) {
      factors[j].resize(mu.alphabet(i));
      for (int s = 0; s < mu.alphabet(i); ++s) {
        double phase = 0;
        if (w.integer_target) {
          phase = chars.thetas[j] * static_cast<double>(w.sigma[i][s][0]);
        } else {
          for (int r = 0; r < w.group.rank(); ++r)
            phase += static_cast<double>(chars.finite[j][r]) *
                     static_cast<double>(w.sigma[i][s][r]) /
                     static_cast<double>(w.group.orders[r]);
        }
        factors[j][s] = std::polar(1.0, kTau * phase);
      }
    }
    out.emplace_back(std::vector<int>(n, mu.alphabet(i)), std::move(measure),
                     std::move(factors));
  }
  return out;
}

namespace {

// One pass of the closed-form factor update: the optimal factor i given the
// others is the coordinate-i conditional inner product, renormalized.
double sweep_factor(const FunctionTable& f, ProductFunction& p, int coord) {
  const ProductSpace& sp = f.space();
  int n = sp.arity();
  std::vector<Complex> g(sp.radix(coord), 0.0);
  std::vector<int> pt;
  for (std::size_t idx = 0; idx < sp.total_size(); ++idx) {
    sp.point_of(idx, pt);
    double wgt = 1;
    Complex rest = 1;
    for (int j = 0; j < n; ++j) {
      if (j == coord) continue;
      wgt *= f.weights()[j][pt[j]];
      rest *= std::conj(p.factors()[j][pt[j]]);
    }
    g[pt[coord]] += wgt * f[idx] * rest;
  }
  double norm_sq = 0;
  for (int s = 0; s < sp.radix(coord); ++s)
    norm_sq += to_double(f.measure()[coord][s]) * std::norm(g[s]);
  double nrm = std::sqrt(norm_sq);
  if (nrm <= 0) {
    // f is orthogonal to every completion of the other factors: reset to the
    // normalized constant so later sweeps can recover.
    double c = 0;
    for (int s = 0; s < sp.radix(coord); ++s) c += to_double(f.measure()[coord][s]);
    for (int s = 0; s < sp.radix(coord); ++s)
      p.factors()[coord][s] = 1.0 / std::sqrt(c);
    return 0;
  }
  for (int s = 0; s < sp.radix(coord); ++s) p.factors()[coord][s] = g[s] / nrm;
  return nrm;  // objective value |<f,P>| after this update
}

ProductFunction random_unit_product(const FunctionTable& f, Rng& rng) {
  const ProductSpace& sp = f.space();
  std::vector<std::vector<Complex>> factors(sp.arity());
  for (int i = 0; i < sp.arity(); ++i) {
    factors[i].resize(sp.radix(i));
    for (auto& v : factors[i])
      v = Complex(2 * rng.next_double() - 1, 2 * rng.next_double() - 1) +
          Complex(1e-3, 0);
  }
  ProductFunction p(sp.radices(), f.measure(), std::move(factors));
  p.normalize_factors();
  return p;
}

}  // namespace

double CorrelationReport::reevaluate(const FunctionTable& f) const {
  FunctionTable cert = product_part.to_table();
  if (low_degree_part) {
    auto vals = cert.values();
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= (*low_degree_part)[i];
    cert = FunctionTable(cert.space(), cert.measure(), std::move(vals));
  }
  FunctionTable fcopy(f.space(), f.measure(), f.values());
  return std::abs(inner_product(fcopy, cert));
}

CorrelationReport product_correlation_search(const FunctionTable& f,
                                             const SearchConfig& cfg) {
  const ProductSpace& sp = f.space();
  int n = sp.arity();
  CorrelationReport best;
  if (n == 0) {
    // Zero coordinates: the only unit product function is the empty product.
    best.value = std::abs(f[0]);
    best.converged = true;
    best.product_part = ProductFunction({}, {}, {});
    return best;
  }
  best.product_part = ProductFunction::constant_one(sp, f.measure());

  Rng base(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = base.derive(r);
    ProductFunction p = random_unit_product(f, rng);
    double obj = 0;
    bool converged = false;
    long long sweeps = 0;
    for (int it = 0; it < cfg.sweep_cap; ++it) {
      double prev = obj;
      for (int i = 0; i < n; ++i) {
        double next = sweep_factor(f, p, i);
        if (next < obj - 1e-9)
          throw consistency_error("nonmonotone_sweep",
                                  "factor update decreased the objective");
        obj = next;
      }
      ++sweeps;
      if (std::abs(obj - prev) <= 1e-12 * std::max(1.0, obj)) {
        converged = true;
        break;
      }
    }
    if (obj > best.value || r == 0) {
      best.value = obj;
      best.product_part = p;
      best.converged = converged;
      best.sweeps = sweeps;
      best.restarts_used = r + 1;
    }
  }
  best.restarts_used = cfg.restarts;
  return best;
}

CorrelationReport structured_correlation_search(const FunctionTable& f, int d,
                                                const SearchConfig& cfg) {
  const ProductSpace& sp = f.space();
  int n = sp.arity();
  if (n == 0) {
    auto rep = product_correlation_search(f, cfg);
    rep.low_degree_part = FunctionTable(sp, f.measure(), {Complex(1.0, 0.0)});
    return rep;
  }

  CorrelationReport best;
  Rng base(cfg.seed ^ 0x57c7d);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = base.derive(r);
    ProductFunction p = random_unit_product(f, rng);
    FunctionTable L(sp, f.measure(),
                    std::vector<Complex>(sp.total_size(), Complex(1.0, 0.0)));
    double obj = 0;
    bool converged = false;
    long long sweeps = 0;
    for (int it = 0; it < cfg.sweep_cap; ++it) {
      double prev = obj;
      // Optimal L given P: normalized degree-<=d projection of f conj(P).
      std::vector<Complex> rvals(sp.total_size());
      for (std::size_t i = 0; i < rvals.size(); ++i)
        rvals[i] = f[i] * std::conj(p.evaluate_index(i));
      FunctionTable resid(sp, f.measure(), std::move(rvals));
      FunctionTable proj = low_degree_projection(resid, d);
      double pn = proj.norm2();
      if (pn > 0) {
        auto lv = proj.values();
        for (auto& v : lv) v /= pn;
        L = FunctionTable(sp, f.measure(), std::move(lv));
        obj = pn;
      }
      // Factor sweeps given L, on f conj(L).
      std::vector<Complex> tvals(sp.total_size());
      for (std::size_t i = 0; i < tvals.size(); ++i)
        tvals[i] = f[i] * std::conj(L[i]);
      FunctionTable tilted(sp, f.measure(), std::move(tvals));
      for (int i = 0; i < n; ++i) obj = sweep_factor(tilted, p, i);
      ++sweeps;
      if (std::abs(obj - prev) <= 1e-12 * std::max(1.0, obj)) {
        converged = true;
        break;
      }
    }
    if (obj > best.value || r == 0) {
      best.value = obj;
      best.product_part = p;
      best.low_degree_part = L;
      best.converged = converged;
      best.sweeps = sweeps;
    }
  }
  best.restarts_used = cfg.restarts;
  return best;
}

Reduce43Result reduce_arity_4_to_3(const JointDistribution& mu,
                                   const std::vector<FunctionTable>& fs, int n) {
  if (mu.arity() != 4)
    throw domain_error("bad_arity", "the reduction needs a 4-ary distribution");
  check_function_shapes(mu, fs, n);

  // Pair alphabets: only the (s,s') pairs that actually occur.
  auto mu4 = mu.marginal_vector(3);
  std::vector<std::vector<std::pair<int, int>>> pair_symbols(3);
  std::vector<std::map<std::pair<int, int>, int>> pair_id(3);
  std::map<std::vector<int>, Rational> acc;
  for (const auto& a : mu.atoms()) {
    for (const auto& b : mu.atoms()) {
      if (a.tuple[3] != b.tuple[3]) continue;
      std::vector<int> key(3);
      for (int i = 0; i < 3; ++i) {
        auto pr = std::make_pair(a.tuple[i], b.tuple[i]);
        auto [it, fresh] = pair_id[i].try_emplace(
            pr, static_cast<int>(pair_symbols[i].size()));
        if (fresh) pair_symbols[i].push_back(pr);
        key[i] = it->second;
      }
      acc[key] += a.p * b.p / mu4[a.tuple[3]];
    }
  }
  std::vector<JointDistribution::Atom> atoms;
  Rational diagonal = 0;
  for (auto& [t, p] : acc) {
    bool diag = true;
    for (int i = 0; i < 3; ++i)
      diag = diag && pair_symbols[i][t[i]].first == pair_symbols[i][t[i]].second;
    if (diag) diagonal += p;
    atoms.push_back({t, p});
  }
  std::vector<int> alph;
  for (int i = 0; i < 3; ++i) alph.push_back(static_cast<int>(pair_symbols[i].size()));
  JointDistribution mu_prime(alph, std::move(atoms));

  // F_i(x,x') = f_i(x) conj f_i(x') laid out over the pair alphabet.
  std::vector<FunctionTable> big;
  for (int i = 0; i < 3; ++i) {
    ProductSpace psp = ProductSpace::power(alph[i], n);
    std::vector<Complex> vals(psp.total_size());
    std::vector<int> pt;
    std::size_t m = static_cast<std::size_t>(mu.alphabet(i));
    for (std::size_t idx = 0; idx < vals.size(); ++idx) {
      psp.point_of(idx, pt);
      std::size_t ix = 0, ixp = 0;
      for (int j = 0; j < n; ++j) {
        auto [s, sp_] = pair_symbols[i][pt[j]];
        ix = ix * m + static_cast<std::size_t>(s);
        ixp = ixp * m + static_cast<std::size_t>(sp_);
      }
      vals[idx] = fs[i][ix] * std::conj(fs[i][ixp]);
    }
    big.push_back(FunctionTable::uniform(psp, std::move(vals)));
  }

  Reduce43Result out{std::move(mu_prime), std::move(pair_symbols), std::move(big),
                     0.0, 0.0, diagonal, mu.min_atom()};
  Complex lhs = kwise_correlation(mu, fs, n).value;
  out.lhs_sq = std::norm(lhs);
  Complex rhs = kwise_correlation(out.mu_prime, out.big_fs, n).value;
  if (std::abs(rhs.imag()) > 1e-9)
    throw consistency_error("complex_rhs", "reduced correlation should be real");
  out.rhs = rhs.real();
  if (out.lhs_sq > out.rhs + 1e-10)
    throw consistency_error("cauchy_schwarz_violation",
                            "|E[f1f2f3f4]|^2 exceeded the reduced correlation");
  if (out.diagonal_mass < out.min_atom * out.min_atom)
    throw consistency_error("diagonal_mass", "equal-pair mass fell below alpha^2");
  return out;
}

namespace {

struct TriConditional {
  // For one coordinate: per symbol, the atoms containing it with conditional
  // probability p(atom)/marginal(symbol).
  std::vector<std::vector<std::pair<double, std::size_t>>> by_symbol;
};

void clamp_and_center(std::vector<Complex>& u, const std::vector<double>& w) {
  for (int round = 0; round < 100; ++round) {
    Complex mean = 0;
    for (std::size_t s = 0; s < u.size(); ++s) mean += w[s] * u[s];
    for (auto& v : u) v -= mean;
    bool clamped = false;
    for (auto& v : u) {
      double m = std::abs(v);
      if (m > 1.0) {
        v /= m;
        clamped = true;
      }
    }
    if (!clamped && std::abs(mean) <= 1e-9) return;
  }
}

}  // namespace

GapReport trilinear_gap_estimate(const JointDistribution& mu,
                                 const SearchConfig& cfg) {
  if (mu.arity() != 3)
    throw domain_error("bad_arity", "the gap estimate needs a 3-ary distribution");
  auto probs = atom_probs(mu);
  std::vector<std::vector<double>> w(3);
  std::vector<TriConditional> cond(3);
  for (int i = 0; i < 3; ++i) {
    auto marg = mu.marginal_vector(i);
    w[i].resize(marg.size());
    for (std::size_t s = 0; s < marg.size(); ++s) w[i][s] = to_double(marg[s]);
    cond[i].by_symbol.resize(mu.alphabet(i));
    for (std::size_t a = 0; a < mu.atoms().size(); ++a) {
      int s = mu.atoms()[a].tuple[i];
      cond[i].by_symbol[s].push_back({probs[a] / w[i][s], a});
    }
  }

  auto objective = [&](const std::vector<std::vector<Complex>>& uvw) {
    Complex acc = 0;
    for (std::size_t a = 0; a < mu.atoms().size(); ++a) {
      const auto& t = mu.atoms()[a].tuple;
      acc += probs[a] * uvw[0][t[0]] * uvw[1][t[1]] * uvw[2][t[2]];
    }
    return acc;
  };

  auto update_coord = [&](std::vector<std::vector<Complex>>& uvw, int i) {
    // Phase-aligned, clamped, mean-projected conditional expectation.
    std::vector<Complex> c(mu.alphabet(i), 0.0);
    for (int s = 0; s < mu.alphabet(i); ++s)
      for (const auto& [pw, a] : cond[i].by_symbol[s]) {
        const auto& t = mu.atoms()[a].tuple;
        Complex rest = 1;
        for (int j = 0; j < 3; ++j)
          if (j != i) rest *= uvw[j][t[j]];
        c[s] += pw * rest;
      }
    for (int s = 0; s < mu.alphabet(i); ++s) {
      double m = std::abs(c[s]);
      uvw[i][s] = m > 1e-15 ? std::conj(c[s]) / m : Complex(0.0, 0.0);
    }
    clamp_and_center(uvw[i], w[i]);
  };

  GapReport best;
  auto abelian = detect_abelian_embedding(mu);
  Rng base(cfg.seed ^ 0x9a93);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<std::vector<Complex>> uvw(3);
    if (r == 0 && abelian) {
      // Seed from the embedding: characters composed with the witness maps
      // achieve modulus 1 before feasibility projection.
      for (int i = 0; i < 3; ++i) {
        uvw[i].resize(mu.alphabet(i));
        for (int s = 0; s < mu.alphabet(i); ++s) {
          double phase = 0;
          for (int f = 0; f < abelian->group.rank(); ++f)
            phase += static_cast<double>(abelian->sigma[i][s][f]) /
                     static_cast<double>(abelian->group.orders[f]);
          uvw[i][s] = std::polar(1.0, kTau * phase);
        }
        clamp_and_center(uvw[i], w[i]);
      }
    } else {
      Rng rng = base.derive(r);
      for (int i = 0; i < 3; ++i) {
        uvw[i].resize(mu.alphabet(i));
        for (auto& v : uvw[i])
          v = Complex(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
        clamp_and_center(uvw[i], w[i]);
      }
    }

    double local_best = std::abs(objective(uvw));
    int stale = 0;
    bool converged = false;
    for (int it = 0; it < cfg.sweep_cap; ++it) {
      for (int i = 0; i < 3; ++i) update_coord(uvw, i);
      double val = std::abs(objective(uvw));
      if (val > local_best + 1e-10) {
        local_best = val;
        stale = 0;
      } else if (++stale >= 3) {
        converged = true;
        break;
      }
    }
    if (local_best > best.best_correlation || r == 0) {
      best.best_correlation = local_best;
      best.certificate = uvw;
      best.converged = converged;
    }
  }
  best.restarts_used = cfg.restarts;
  best.lambda_hat = std::max(0.0, 1.0 - best.best_correlation);
  return best;
}

ProbeReport local_inverse_probe(const JointDistribution& mu,
                                const FunctionTable& f, const FunctionTable& g,
                                const FunctionTable& h, double delta, int trials,
                                std::uint64_t seed) {
  if (mu.arity() != 3)
    throw domain_error("bad_arity", "the probe needs a 3-ary distribution");
  if (!(delta > 0.0 && delta < 1.0))
    throw domain_error("bad_delta", "delta must lie in (0,1)");
  int n = f.space().arity();

  ProbeReport rep;
  rep.threshold = delta;
  rep.pairwise_connected = is_pairwise_connected(mu).pairwise_connected;

  std::vector<FunctionTable> triple{f, g, h};
  std::optional<McParams> mc;
  if (std::pow(static_cast<double>(mu.atoms().size()), n) > kExactCorrelationCap)
    mc = McParams{50'000, seed ^ 0xc0441};
  rep.initial_correlation = kwise_correlation(mu, triple, n, mc).value;

  auto marg = mu.marginal_vector(0);
  std::vector<double> cum(marg.size());
  double run = 0;
  for (std::size_t s = 0; s < marg.size(); ++s) {
    run += to_double(marg[s]);
    cum[s] = run;
  }

  Rng base(seed);
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = base.derive(t);
    CoordinateSubset keep = sample_subset(n, delta, rng);
    auto outside = keep.complement().members();
    std::vector<int> fixed;
    for (std::size_t j = 0; j < outside.size(); ++j)
      fixed.push_back(static_cast<int>(sample_cumulative(cum, rng.next_double())));
    FunctionTable fr = restrict(f, Restriction{keep, fixed});
    SearchConfig cfg{8, 200, rng.next_u64()};
    auto report = product_correlation_search(fr, cfg);
    rep.values.push_back(report.value);
    if (report.value >= delta) ++successes;
  }
  rep.success_rate = trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  return rep;
}

}  // namespace kwise
