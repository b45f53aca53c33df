#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "kwise/analysis.hpp"
#include "kwise/distribution.hpp"
#include "kwise/function_table.hpp"

namespace kwise {

enum class PatternKind { ap3_full, ap3_somewhat, ap3_restricted, comb_line };

// ap3_*: triples (x, x+a, x+2a) in F_p^n with a ranging over D^n \ {0},
// D = F_p | {0,1,2} | {0,1}. comb_line: k-tuples in {0..k-1}^n where every
// coordinate is constant or runs through 0..k-1.
struct PatternFamily {
  PatternKind kind = PatternKind::ap3_full;
  int p = 3;  // AP families: odd prime
  int k = 3;  // comb_line length

  static PatternFamily ap3(PatternKind kind, int p);
  static PatternFamily line(int k);
  int points_per_instance() const;
  int ambient_radix() const { return kind == PatternKind::comb_line ? k : p; }
};

struct PointSet {
  ProductSpace space;  // all radices equal (F_p^n or {0..k-1}^n)
  std::vector<std::uint8_t> membership;

  PointSet(ProductSpace sp, std::vector<std::uint8_t> mask);
  static PointSet empty(int radix, int n);
  static PointSet full(int radix, int n);
  static PointSet of_indices(int radix, int n, const std::vector<std::size_t>& idx);

  std::size_t count() const;
  Rational density() const;
  bool contains(std::size_t i) const { return membership[i]; }
};

// Single-coordinate distribution whose n-fold tensor power generates the
// pattern; comb_line(k) yields the k+1 diagonal-plus-ascending atoms.
JointDistribution pattern_distribution(const PatternFamily& family);

// Streams every instance of the family in the given ambient space.
void for_each_instance(const ProductSpace& space, const PatternFamily& family,
                       const std::function<void(const std::vector<std::size_t>&)>& fn);

// Exact number of instances fully inside A (ordered (x,a) pairs for APs,
// one per wildcard pattern for lines).
long long count_patterns(const PointSet& a, const PatternFamily& family);
// Instances in the full ambient space; equals (k+1)^n - k^n for lines.
long long total_instances(const ProductSpace& space, const PatternFamily& family);

// Both sides of the 3-AP correlation identity over F_p^n, a sampled
// uniformly including 0: lhs = E[f_A(x) f_A(x+a) f_A(x+2a)], rhs =
// sum_alpha fhat(alpha)^2 fhat(-2 alpha). Disagreement beyond 1e-10 throws.
struct ThreeApIdentity {
  double lhs = 0;
  Complex rhs;
};
ThreeApIdentity fourier_3ap_check(const PointSet& a, int p);

// One density-increment step: a verified 3-AP when one exists, otherwise the
// densest coset of the hyperplane normal to the heaviest Fourier character.
struct ApWitness {
  std::vector<std::size_t> points;  // member indices forming x, x+a, x+2a
};
struct HyperplaneStep {
  std::vector<int> alpha;  // nonzero character
  int coset = 0;           // chosen c with x . alpha = c
  Rational new_density;
  std::size_t member_count = 0;
};
using MeshulamStep = std::variant<ApWitness, HyperplaneStep>;
MeshulamStep meshulam_step(const PointSet& a, int p);

enum class MeshulamOutcome { ap_found, hypothesis_failed, dimension_exhausted };
struct MeshulamTrace {
  struct Entry {
    int dims;
    Rational density;
    int codim;  // accumulated codimension
  };
  std::vector<Entry> entries;
  MeshulamOutcome outcome = MeshulamOutcome::ap_found;
  std::optional<ApWitness> witness;  // in the final restricted coordinates
};
// Iterates the step, re-coordinatizing the chosen coset to F_p^{n-1}, until
// an AP is found, the density-increment hypothesis mu(A) >= 2 p^{-n/2}
// fails, or the dimension is exhausted.
MeshulamTrace meshulam_run(const PointSet& a, int p);

enum class SearchMethod { exhaustive, branch_and_bound };
struct FreeSetResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;
  bool optimal = true;  // false when the node budget truncated the search
  long long nodes = 0;
};
FreeSetResult max_pattern_free(int n, const PatternFamily& family,
                               SearchMethod method,
                               long long node_budget = 50'000'000);

}  // namespace kwise
