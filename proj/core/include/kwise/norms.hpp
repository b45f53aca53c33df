#pragma once

#include <optional>
#include <string>

#include "kwise/function_table.hpp"

namespace kwise {

struct McParams {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

struct NormReport {
  double value = 0;
  std::string method;  // "exact-sum" | "monte-carlo"
  std::size_t samples = 0;
  double stderr_est = 0;  // zero for exact sums
};

struct FormReport {
  Complex value;
  std::string method;
  std::size_t samples = 0;
  double stderr_est = 0;
};

// ( E_{x,h_1..h_s} prod_{w in {0,1}^s} C^{|w|} f(x + sum w_i h_i) )^{1/2^s}
// over the product of cyclic groups with uniform measure. The inner average
// must be real and nonnegative up to tolerance; worse is an inconsistency.
NormReport gowers_norm(const FunctionTable& f, int s,
                       const std::optional<McParams>& mc = {});

// E[f1(x,y) f2(x',y') conj f3(x,y') conj f4(x',y)] with x,x' on I and
// y,y' on the complement, uniform measure.
Complex box_form(const FunctionTable& f1, const FunctionTable& f2,
                 const FunctionTable& f3, const FunctionTable& f4,
                 CoordinateSubset I);
FormReport box_form_mc(const FunctionTable& f1, const FunctionTable& f2,
                       const FunctionTable& f3, const FunctionTable& f4,
                       CoordinateSubset I, const McParams& mc);
double box_norm(const FunctionTable& f, CoordinateSubset I);

// Average of box forms over I included coordinatewise with probability 1/2;
// exact over all 2^n subsets when affordable, else Monte Carlo over
// (I, points).
FormReport swap_form(const FunctionTable& f1, const FunctionTable& f2,
                     const FunctionTable& f3, const FunctionTable& f4,
                     const std::optional<McParams>& mc = {});
// Same quantity through the coordinate-exchange distribution: sample x,y,
// then per coordinate keep (x_i,y_i) or swap it with probability 1/2.
FormReport swap_via_exchange(const FunctionTable& f1, const FunctionTable& f2,
                             const FunctionTable& f3, const FunctionTable& f4,
                             const std::optional<McParams>& mc = {});
NormReport swap_norm(const FunctionTable& f,
                     const std::optional<McParams>& mc = {});

// Best rectangle correlation extracted from a large box norm: g(x) = f(x,y'),
// h(y) = f(x',y) for the (x',y') maximizing |<f, g.h>| by exhaustive scan.
struct BoxInverse {
  FunctionTable g;  // on Sigma^I
  FunctionTable h;  // on Sigma^complement(I)
  double correlation = 0;
};
BoxInverse box_inverse_extract(const FunctionTable& f, CoordinateSubset I);

}  // namespace kwise
