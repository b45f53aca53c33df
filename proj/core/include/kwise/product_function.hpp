#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kwise/function_table.hpp"

namespace kwise {

// P(x) = P_1(x_1) ... P_n(x_n), kept in factored form so norms under the
// product measure multiply exactly across coordinates.
class ProductFunction {
 public:
  ProductFunction() = default;
  ProductFunction(std::vector<int> radices,
                  std::vector<std::vector<Rational>> measure,
                  std::vector<std::vector<Complex>> factors);

  static ProductFunction constant_one(const ProductSpace& space,
                                      std::vector<std::vector<Rational>> measure);

  int arity() const { return static_cast<int>(radices_.size()); }
  const std::vector<int>& radices() const { return radices_; }
  const std::vector<std::vector<Rational>>& measure() const { return measure_; }
  const std::vector<std::vector<Complex>>& factors() const { return factors_; }
  std::vector<std::vector<Complex>>& factors() { return factors_; }

  Complex evaluate(const std::vector<int>& point) const;
  Complex evaluate_index(std::size_t index) const;

  double factor_norm2(int i) const;
  double norm2() const;     // product of factor 2-norms
  double sup_norm() const;  // product of factor sup-norms

  // Scales every factor to unit 2-norm; zero factors are left alone and
  // reported by the return value.
  bool normalize_factors();

  FunctionTable to_table() const;

 private:
  std::vector<int> radices_;
  std::vector<std::vector<Rational>> measure_;
  std::vector<std::vector<Complex>> factors_;
};

// prod over all k'-subsets T of factors P_T(x_T); evaluation only — the
// correlation search over this family is out of scope.
class CombinatorialProduct {
 public:
  CombinatorialProduct(int n, int k,
                       std::map<std::uint64_t, std::vector<Complex>> factors,
                       std::vector<int> radices);

  int arity() const { return n_; }
  int degree_bound() const { return k_; }
  Complex evaluate(const std::vector<int>& point) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<int> radices_;
  std::map<std::uint64_t, std::vector<Complex>> factors_;  // key: subset mask
};

}  // namespace kwise
