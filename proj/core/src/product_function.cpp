#include "kwise/product_function.hpp"

#include <bit>
#include <cmath>

namespace kwise {

ProductFunction::ProductFunction(std::vector<int> radices,
                                 std::vector<std::vector<Rational>> measure,
                                 std::vector<std::vector<Complex>> factors)
    : radices_(std::move(radices)),
      measure_(std::move(measure)),
      factors_(std::move(factors)) {
  if (measure_.size() != radices_.size() || factors_.size() != radices_.size())
    throw domain_error("bad_product_function", "per-coordinate data length mismatch");
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    if (static_cast<int>(factors_[i].size()) != radices_[i] ||
        static_cast<int>(measure_[i].size()) != radices_[i])
      throw domain_error("bad_product_function", "factor table arity mismatch");
  }
}

ProductFunction ProductFunction::constant_one(
    const ProductSpace& space, std::vector<std::vector<Rational>> measure) {
  std::vector<std::vector<Complex>> factors(space.arity());
  for (int i = 0; i < space.arity(); ++i)
    factors[i].assign(space.radix(i), Complex(1.0, 0.0));
  return ProductFunction(space.radices(), std::move(measure), std::move(factors));
}

Complex ProductFunction::evaluate(const std::vector<int>& point) const {
  if (point.size() != radices_.size())
    throw domain_error("bad_point", "point arity mismatch");
  Complex acc = 1;
  for (std::size_t i = 0; i < point.size(); ++i) acc *= factors_[i][point[i]];
  return acc;
}

Complex ProductFunction::evaluate_index(std::size_t index) const {
  Complex acc = 1;
  for (int i = arity() - 1; i >= 0; --i) {
    acc *= factors_[i][index % static_cast<std::size_t>(radices_[i])];
    index /= static_cast<std::size_t>(radices_[i]);
  }
  return acc;
}

double ProductFunction::factor_norm2(int i) const {
  double acc = 0;
  for (int s = 0; s < radices_[i]; ++s)
    acc += to_double(measure_[i][s]) * std::norm(factors_[i][s]);
  return std::sqrt(acc);
}

double ProductFunction::norm2() const {
  double acc = 1;
  for (int i = 0; i < arity(); ++i) acc *= factor_norm2(i);
  return acc;
}

double ProductFunction::sup_norm() const {
  double acc = 1;
  for (int i = 0; i < arity(); ++i) {
    double m = 0;
    for (const auto& v : factors_[i]) m = std::max(m, std::abs(v));
    acc *= m;
  }
  return acc;
}

bool ProductFunction::normalize_factors() {
  bool all_nonzero = true;
  for (int i = 0; i < arity(); ++i) {
    double nrm = factor_norm2(i);
    if (nrm <= 0) {
      all_nonzero = false;
      continue;
    }
    for (auto& v : factors_[i]) v /= nrm;
  }
  return all_nonzero;
}

FunctionTable ProductFunction::to_table() const {
  ProductSpace sp(radices_);
  std::vector<Complex> vals(sp.total_size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = evaluate_index(i);
  return FunctionTable(sp, measure_, std::move(vals));
}

CombinatorialProduct::CombinatorialProduct(
    int n, int k, std::map<std::uint64_t, std::vector<Complex>> factors,
    std::vector<int> radices)
    : n_(n), k_(k), radices_(std::move(radices)), factors_(std::move(factors)) {
  if (static_cast<int>(radices_.size()) != n_)
    throw domain_error("bad_comb_product", "one radix per coordinate");
  // Every k-subset must carry a complete table over its coordinates.
  std::uint64_t subsets = 0;
  for (const auto& [mask, table] : factors_) {
    if (std::popcount(mask) != k_ || (n_ < 64 && mask >> n_))
      throw domain_error("bad_comb_product", "factor key is not a k-subset of [n]");
    std::size_t want = 1;
    for (int i = 0; i < n_; ++i)
      if (mask >> i & 1) want *= static_cast<std::size_t>(radices_[i]);
    if (table.size() != want)
      throw domain_error("missing_factor", "factor table size mismatch");
    ++subsets;
  }
  std::uint64_t expect = 1;
  for (int i = 0; i < k_; ++i) expect = expect * (n_ - i) / (i + 1);
  if (subsets != expect)
    throw domain_error("missing_factor", "need one factor per k-subset");
}

Complex CombinatorialProduct::evaluate(const std::vector<int>& point) const {
  if (static_cast<int>(point.size()) != n_)
    throw domain_error("bad_point", "point arity mismatch");
  Complex acc = 1;
  for (const auto& [mask, table] : factors_) {
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
      if (mask >> i & 1) idx = idx * static_cast<std::size_t>(radices_[i]) + point[i];
    acc *= table[idx];
  }
  return acc;
}

}  // namespace kwise
