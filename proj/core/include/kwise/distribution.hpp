#pragma once

#include <optional>
#include <vector>

#include "kwise/rational.hpp"

namespace kwise {

// Joint distribution over Sigma_1 x ... x Sigma_k given by its atoms, with
// exact rational probabilities. By default construction requires full
// marginal support (every symbol of every alphabet occurs in some atom),
// matching the standing hypothesis of the embedding definitions; callers
// that want the alphabets shrunk instead pass ShrinkAlphabets::yes.
class JointDistribution {
 public:
  struct Atom {
    std::vector<int> tuple;
    Rational p;
  };

  enum class ShrinkAlphabets { no, yes };

  JointDistribution(std::vector<int> alphabets, std::vector<Atom> atoms,
                    ShrinkAlphabets shrink = ShrinkAlphabets::no);

  static JointDistribution uniform_on(std::vector<int> alphabets,
                                      std::vector<std::vector<int>> support,
                                      ShrinkAlphabets shrink = ShrinkAlphabets::no);

  int arity() const { return static_cast<int>(alphabets_.size()); }
  const std::vector<int>& alphabets() const { return alphabets_; }
  int alphabet(int i) const { return alphabets_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational min_atom() const;

  // Exact marginal on the given coordinates (kept in increasing order).
  JointDistribution marginal(const std::vector<int>& coords) const;
  // Single-coordinate marginal as a plain probability vector.
  std::vector<Rational> marginal_vector(int coord) const;
  // Pairwise marginal support as an adjacency matrix |Sigma_i| x |Sigma_j|.
  std::vector<std::vector<char>> pair_support(int i, int j) const;

  bool has_full_marginal_support() const;

 private:
  std::vector<int> alphabets_;
  std::vector<Atom> atoms_;
};

struct ComponentPartition {
  int component_count = 0;
  // component id per atom (for the support graph) or per vertex
  // (for bipartite pair graphs; vertices of side j are offset by |Sigma_i|).
  std::vector<int> component;
};

// Support graph: atoms adjacent iff they differ in exactly one coordinate.
struct ConnectivityResult {
  bool connected = false;
  ComponentPartition partition;
};
ConnectivityResult is_connected(const JointDistribution& mu);

// Bipartite graphs (Sigma_i, Sigma_j, supp(mu_ij)) for every pair i<j.
struct PairwiseConnectivityResult {
  bool pairwise_connected = false;
  // indexed by pair (i,j), i<j, in lexicographic order
  std::vector<ComponentPartition> pair_partitions;
  std::vector<std::pair<int, int>> pairs;
};
PairwiseConnectivityResult is_pairwise_connected(const JointDistribution& mu);

}  // namespace kwise
