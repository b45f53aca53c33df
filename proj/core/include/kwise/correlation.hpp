#pragma once

#include <optional>
#include <vector>

#include "kwise/analysis.hpp"
#include "kwise/distribution.hpp"
#include "kwise/embedding.hpp"
#include "kwise/norms.hpp"
#include "kwise/product_function.hpp"

namespace kwise {

// Search knobs shared by the alternating-maximization routines.
struct SearchConfig {
  int restarts = 20;
  int sweep_cap = 500;
  std::uint64_t seed = 0;
};

// E_{(x_1..x_k) ~ mu^{tensor n}}[ f_1(x_1) ... f_k(x_k) ]; exact when
// |supp(mu)|^n fits the budget, else Monte Carlo.
FormReport kwise_correlation(const JointDistribution& mu,
                             const std::vector<FunctionTable>& fs, int n,
                             const std::optional<McParams>& mc = {});
// Product functions factor across coordinates, so the same expectation is a
// product of n single-coordinate expectations; exact at any n.
Complex kwise_correlation(const JointDistribution& mu,
                          const std::vector<ProductFunction>& fs);

// Characters of the witness target, one per tensor coordinate: for a finite
// group a character index tuple (one entry per cyclic factor); for (Z,+) an
// exponent theta in (0,1) with chi(a) = e^{2 pi i theta a}.
struct EmbeddingCharacters {
  std::vector<std::vector<long long>> finite;  // [coordinate][factor]
  std::vector<double> thetas;                  // [coordinate], integer target
};

// f_i(x_i) = prod_j chi_j(sigma_i(x_i(j))): unimodular functions whose
// k-wise correlation has modulus 1 on the support.
std::vector<ProductFunction> build_counterexample(const JointDistribution& mu,
                                                  const EmbeddingWitness& w,
                                                  const EmbeddingCharacters& chars);

struct CorrelationReport {
  double value = 0;  // |<f, certificate>|
  ProductFunction product_part;
  std::optional<FunctionTable> low_degree_part;  // L when the search is structured
  int restarts_used = 0;
  long long sweeps = 0;
  bool converged = false;

  // |<f, L . P>| recomputed from the certificate.
  double reevaluate(const FunctionTable& f) const;
};

// Alternating maximization of |<f, P>| over product functions with unit-norm
// factors; monotone in the objective and a lower bound on the true maximum.
CorrelationReport product_correlation_search(const FunctionTable& f,
                                             const SearchConfig& cfg);

// Alternates the optimal degree-<=d part L given P with factor sweeps given
// L; maximizes |<f, L . P>| with ||L||_2 = 1.
CorrelationReport structured_correlation_search(const FunctionTable& f, int d,
                                                const SearchConfig& cfg);

// The Cauchy-Schwarz step from 4-wise to 3-wise correlations: mu' couples two
// mu-samples agreeing on the last coordinate; F_i(x,x') = f_i(x) conj f_i(x').
struct Reduce43Result {
  JointDistribution mu_prime;
  // pair_symbols[i] lists, per coordinate i of mu', the (s,s') pairs that
  // realize its (shrunk) alphabet, in symbol order.
  std::vector<std::vector<std::pair<int, int>>> pair_symbols;
  std::vector<FunctionTable> big_fs;  // F_1, F_2, F_3 on the pair alphabets
  double lhs_sq = 0;
  double rhs = 0;
  Rational diagonal_mass;
  Rational min_atom;
};
Reduce43Result reduce_arity_4_to_3(const JointDistribution& mu,
                                   const std::vector<FunctionTable>& fs, int n);

// 1 - (best found |E_mu[u v w]| over 1-bounded mean-zero univariate
// functions); an upper-bound estimate of the trilinear base-case gap.
struct GapReport {
  double lambda_hat = 1.0;
  double best_correlation = 0.0;
  std::vector<std::vector<Complex>> certificate;  // u, v, w
  int restarts_used = 0;
  bool converged = false;
};
GapReport trilinear_gap_estimate(const JointDistribution& mu,
                                 const SearchConfig& cfg);

// Random-restriction probe: sample I subseteq_delta [n] and a fixing of the
// complement from mu_1, run the product search on the restriction, report
// the fraction of trials reaching the threshold delta.
struct ProbeReport {
  double success_rate = 0;
  std::vector<double> values;  // best correlation per trial
  double threshold = 0;
  bool pairwise_connected = true;  // probe warns when the premise fails
  Complex initial_correlation = 0;
};
ProbeReport local_inverse_probe(const JointDistribution& mu,
                                const FunctionTable& f, const FunctionTable& g,
                                const FunctionTable& h, double delta, int trials,
                                std::uint64_t seed);

}  // namespace kwise
