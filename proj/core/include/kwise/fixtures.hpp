#pragma once

#include <string>
#include <vector>

#include "kwise/csp.hpp"
#include "kwise/distribution.hpp"

namespace kwise {

// The named single-coordinate distributions and predicate families used
// throughout the tests and shipped by `kwise fixtures`. All generated by
// code; never hand-written tables.
namespace fixtures {

JointDistribution ap3_full(int p);
JointDistribution ap3_somewhat(int p);
JointDistribution ap3_restricted(int p);
JointDistribution dhj3();
JointDistribution full_support(int m, int k);
JointDistribution diagonal(int m, int k);

// All eight 3-SAT clause predicates P_{a,b,c}(x,y,z) = 1 - [x=a,y=b,z=c].
std::vector<Predicate> three_sat_predicates();
// 3-Lin equation predicates x+y+z = d over F_p (all coefficients 1).
std::vector<Predicate> three_lin_predicates(int p);

struct NamedDistribution {
  std::string name;
  JointDistribution dist;
};
std::vector<NamedDistribution> all_distributions();

}  // namespace fixtures

}  // namespace kwise
