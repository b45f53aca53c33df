#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kwise/function_table.hpp"

namespace kwise {

// Tolerances for the exact-identity and accumulated-contraction checks.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kAccumTol = 1e-10;

// Fourier coefficients of a function on a product of cyclic groups under the
// uniform measure, indexed by characters alpha in lexicographic order:
// coeff(alpha) = E_x[f(x) conj(chi_alpha(x))], chi_alpha(x) = prod_i
// e^{2 pi i x_i alpha_i / m_i}.
struct FourierSpectrum {
  ProductSpace group;
  std::vector<Complex> coeff;
};

FourierSpectrum fourier_transform(const FunctionTable& f);
FunctionTable inverse_fourier(const FourierSpectrum& spec);
Complex character_value(const ProductSpace& group, const std::vector<int>& alpha,
                        const std::vector<int>& x);
// chi_alpha as a table, for building test functions.
FunctionTable character_table(const ProductSpace& group, const std::vector<int>& alpha);

// f = sum_S f^{=S}: components orthogonal under the product measure,
// f^{=S} obtained by composing per-coordinate conditional-expectation and
// difference operators.
struct EfronSteinDecomposition {
  std::map<std::uint64_t, FunctionTable> components;  // key: subset bitmask
};

EfronSteinDecomposition efron_stein(const FunctionTable& f);

// ||f^{=S}||_2^2 summed per degree |S| = 0..n, computed without
// materializing the components (DFS over the operator tree).
std::vector<double> degree_profile(const FunctionTable& f);

// (low, high) = (sum_{|S|<=d} ||f^{=S}||^2, ||f||^2 - low).
std::pair<double, double> degree_mass(const FunctionTable& f, int d);

// ||f^{<=d}||_2: the best correlation |<f,L>| over degree-<=d functions L
// with ||L||_2 = 1.
double low_degree_correlation(const FunctionTable& f, int d);
// The optimizer itself: normalized degree-<=d projection (zero function if
// the projection vanishes).
FunctionTable low_degree_projection(const FunctionTable& f, int d);

// (T_{1-eps,nu} f)(x) = E[f(y)], y_i = x_i with prob 1-eps else fresh from
// nu_i; exact per-coordinate tensor contraction.
FunctionTable noise_apply(const FunctionTable& f, double eps);
FunctionTable noise_apply(const FunctionTable& f, double eps,
                          const std::vector<std::vector<Rational>>& nu);

// g - T_{1-eps/d} g: pushes mass to degrees above ~d.
FunctionTable make_high_degree(const FunctionTable& g, double eps, int d);

}  // namespace kwise
