#pragma once

#include <optional>
#include <vector>

#include "kwise/distribution.hpp"
#include "kwise/snf.hpp"

namespace kwise {

// Z_{d_1} x ... x Z_{d_r}; the empty list is the trivial group.
struct FiniteAbelianGroup {
  std::vector<long long> orders;

  int rank() const { return static_cast<int>(orders.size()); }
  bool trivial() const { return orders.empty(); }
};

// Maps sigma_i : Sigma_i -> A certifying sigma_1(x_1)+...+sigma_k(x_k) = 0
// on every support atom, with not all sigma_i constant. The target is
// either (Z,+) or a finite Abelian group; elements are tuples, one entry
// per cyclic factor (length 1 for Z).
struct EmbeddingWitness {
  bool integer_target = false;
  FiniteAbelianGroup group;  // ignored when integer_target
  // sigma[coordinate][symbol] = group element
  std::vector<std::vector<std::vector<long long>>> sigma;

  int element_rank() const { return integer_target ? 1 : group.rank(); }
};

// One row per support atom, one column per (coordinate, symbol) pair;
// row of atom s has a 1 in column (i, s_i) for each coordinate i. Solutions
// of M sigma = 0 over a target group are exactly the embedding candidates.
IntMatrix constraint_matrix(const JointDistribution& mu);

// True iff the sum vanishes on every atom and not all sigma_i are constant.
bool verify_witness(const JointDistribution& mu, const EmbeddingWitness& w);

// SOME iff the rational kernel of the constraint matrix strictly contains
// the (k-1)-dimensional space of constant zero-sum solutions. The witness is
// integral (a kernel lattice vector), gcd-reduced and verified.
std::optional<EmbeddingWitness> detect_z_embedding(const JointDistribution& mu);

// SOME iff a Z-embedding exists (returned reduced mod a prime) or some
// elementary divisor d > 1 of the constraint matrix yields a non-constant
// Z_d solution. Every SOME ships a verified witness.
std::optional<EmbeddingWitness> detect_abelian_embedding(const JointDistribution& mu);

// Torsion part of the solution module modulo constants: the product of
// Z_{d_j} over elementary divisors d_j > 1. Errors with INFINITE_EMBEDDING
// when mu admits (Z,+)-embeddings; trivial group when no embedding exists.
FiniteAbelianGroup canonical_group(const JointDistribution& mu);

}  // namespace kwise
