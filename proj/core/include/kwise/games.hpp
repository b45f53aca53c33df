#pragma once

#include <set>
#include <vector>

#include "kwise/rational.hpp"

namespace kwise {

// k-player game: k-partite k-uniform hypergraph with an accepted-tuple set
// per edge. Empty accepted sets are allowed (value-0 edges).
struct Game {
  int players = 0;
  std::vector<int> vertex_counts;  // |V_i|
  std::vector<int> alphabets;      // |Sigma_i|
  struct Edge {
    std::vector<int> verts;                 // one vertex per player
    std::set<std::vector<int>> accepted;    // tuples in Sigma_1 x ... x Sigma_k
  };
  std::vector<Edge> edges;

  void validate() const;
};

struct GameValue {
  Rational value;
  std::vector<std::vector<int>> strategies;  // per player, per vertex
};

// Exact maximum over all strategy profiles; brute-force cap ~1e7 profiles.
GameValue game_value(const Game& g);

// n-fold repetition: vertex sets V_i^n, alphabets Sigma_i^n, one edge per
// n-tuple of base edges, accepting exactly when every coordinate's labels
// satisfy its base constraint.
Game repeat_game(const Game& g, int n);

}  // namespace kwise
