#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwise/distribution.hpp"
#include "kwise/function_table.hpp"

namespace kwise {

// P : Sigma^k -> {0,1}, dense truth table in lexicographic order.
struct Predicate {
  int arity = 0;
  int alphabet = 0;
  std::vector<std::uint8_t> table;

  Predicate(int k, int m, std::vector<std::uint8_t> t);
  static Predicate from_bitstring(int k, int m, const std::string& bits);

  bool satisfied(const std::vector<int>& tuple) const;
  long long satisfying_count() const;
  std::size_t table_size() const { return table.size(); }
};

struct CspInstance {
  struct Constraint {
    std::vector<int> vars;
    Predicate pred;
  };
  int nvars = 0;
  int alphabet = 0;
  std::vector<Constraint> constraints;

  void validate() const;
};

// Exact maximum over all |Sigma|^n assignments; empty instances value 1 by
// convention.
struct CspValue {
  Rational value;
  std::vector<int> assignment;
};
CspValue csp_value_bruteforce(const CspInstance& inst);

// Expected satisfied fraction of a uniformly random assignment, exact.
Rational random_assignment_value(const CspInstance& inst);

// a x_i + b x_j + c x_k = d over F_p.
struct LinEquation {
  int a, b, c, d;
  int xi, xj, xk;
};
struct LinSystem {
  int p = 3;
  int nvars = 0;
  std::vector<LinEquation> eqs;
};

// Gaussian elimination; SOME iff the system is consistent (val = 1), the
// assignment re-verified against every equation. Free variables get 0.
std::optional<std::vector<int>> gauss_solve_3lin(const LinSystem& sys);
CspInstance lin_system_to_csp(const LinSystem& sys);
// One line per equation: "a b c d i j k".
LinSystem parse_3lin(const std::string& text, int p, int nvars = -1);

// Acceptance probability E_{(x_1..x_k) ~ mu^{tensor n}}[P(f(x_1)..f(x_k))]
// for f : Sigma^n -> Sigma given as a dense symbol table.
struct DictTestResult {
  Rational exact;      // populated in exact mode
  double value = 0;    // always populated
  double stderr_est = 0;
  std::string method;
  std::size_t samples = 0;
};
DictTestResult dictatorship_test_eval(const JointDistribution& mu,
                                      const Predicate& pred,
                                      const std::vector<int>& f, int n,
                                      bool exact, std::size_t mc_samples = 100000,
                                      std::uint64_t seed = 0);

// Pr[f(x) != f(x') | x and x' agree off coordinate i], x ~ nu^{tensor n},
// for a Boolean-valued table. Computed by the two-point coordinate sum and
// cross-checked against 2(||f||^2 - ||E[f | x_{-i}]||^2), exactly.
Rational influence(const FunctionTable& indicator, int coordinate);

}  // namespace kwise
