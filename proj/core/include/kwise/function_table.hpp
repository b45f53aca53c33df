#pragma once

#include <complex>
#include <vector>

#include "kwise/product_space.hpp"
#include "kwise/rational.hpp"

namespace kwise {

using Complex = std::complex<double>;

// Dense complex function on a product space, together with the product base
// measure the inner products are taken under. Values are stored in
// lexicographic order (first coordinate most significant).
class FunctionTable {
 public:
  FunctionTable() = default;
  FunctionTable(ProductSpace space, std::vector<std::vector<Rational>> measure,
                std::vector<Complex> values);

  // Uniform base measure.
  static FunctionTable uniform(ProductSpace space, std::vector<Complex> values);
  static FunctionTable constant(ProductSpace space, Complex value);

  const ProductSpace& space() const { return space_; }
  const std::vector<std::vector<Rational>>& measure() const { return measure_; }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }

  bool measure_is_uniform() const;
  // Per-coordinate weights as doubles, for the numeric kernels.
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  // Product weight of the point with the given lexicographic index.
  double weight_of(std::size_t index) const;

  double mean_weight() const { return 1.0 / static_cast<double>(space_.total_size()); }

  Complex expectation() const;
  double norm2_sq() const;   // E_nu |f|^2
  double norm2() const;
  double sup_norm() const;

 private:
  ProductSpace space_;
  std::vector<std::vector<Rational>> measure_;
  std::vector<std::vector<double>> weights_;
  std::vector<Complex> values_;
};

// <f,g> = E_nu[f * conj(g)]; both tables must share space and measure.
Complex inner_product(const FunctionTable& f, const FunctionTable& g);

// f restricted per r: coordinates outside r.keep fixed to r.fixed. The result
// lives on the kept coordinates with the induced product measure.
FunctionTable restrict(const FunctionTable& f, const Restriction& r);

// 1_A - nu(A): mean-zero, sup-norm <= 1.
FunctionTable normalized_indicator(const ProductSpace& space,
                                   const std::vector<std::vector<Rational>>& measure,
                                   const std::vector<std::uint8_t>& membership);

std::vector<std::vector<Rational>> uniform_measure(const ProductSpace& space);

}  // namespace kwise
