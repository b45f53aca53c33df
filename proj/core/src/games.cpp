#include "kwise/games.hpp"

#include <cmath>

#include "kwise/errors.hpp"

namespace kwise {

void Game::validate() const {
  if (players < 1) throw domain_error("bad_game", "need at least one player");
  if (static_cast<int>(vertex_counts.size()) != players ||
      static_cast<int>(alphabets.size()) != players)
    throw domain_error("bad_game", "per-player size lists mismatch");
  for (int c : vertex_counts)
    if (c < 1) throw domain_error("bad_game", "empty vertex set");
  for (int m : alphabets)
    if (m < 1) throw domain_error("bad_game", "empty alphabet");
  for (const auto& e : edges) {
    if (static_cast<int>(e.verts.size()) != players)
      throw domain_error("bad_game", "edge arity mismatch");
    for (int i = 0; i < players; ++i)
      if (e.verts[i] < 0 || e.verts[i] >= vertex_counts[i])
        throw domain_error("bad_game", "edge vertex out of range");
    for (const auto& t : e.accepted) {
      if (static_cast<int>(t.size()) != players)
        throw domain_error("bad_game", "accepted tuple arity mismatch");
      for (int i = 0; i < players; ++i)
        if (t[i] < 0 || t[i] >= alphabets[i])
          throw domain_error("bad_game", "accepted symbol out of range");
    }
  }
}

GameValue game_value(const Game& g) {
  g.validate();
  if (g.edges.empty())
    throw domain_error("bad_game", "value of an edgeless game is undefined");

  double profiles = 1;
  for (int i = 0; i < g.players; ++i)
    profiles *= std::pow(static_cast<double>(g.alphabets[i]), g.vertex_counts[i]);
  if (profiles > 1e7)
    throw domain_error("too_large", "strategy space above the brute-force cap");

  // Flatten all (player, vertex) labels into one odometer.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < g.players; ++i)
    for (int v = 0; v < g.vertex_counts[i]; ++v) slots.emplace_back(i, v);

  std::vector<std::vector<int>> strat(g.players), best_strat;
  for (int i = 0; i < g.players; ++i) strat[i].assign(g.vertex_counts[i], 0);
  long long best = -1;
  std::vector<int> tuple(g.players);
  while (true) {
    long long won = 0;
    for (const auto& e : g.edges) {
      for (int i = 0; i < g.players; ++i) tuple[i] = strat[i][e.verts[i]];
      won += e.accepted.count(tuple);
    }
    if (won > best) {
      best = won;
      best_strat = strat;
    }
    int j = static_cast<int>(slots.size()) - 1;
    while (j >= 0) {
      auto [pi, vi] = slots[j];
      if (strat[pi][vi] == g.alphabets[pi] - 1) {
        strat[pi][vi] = 0;
        --j;
      } else {
        ++strat[pi][vi];
        break;
      }
    }
    if (j < 0) break;
  }
  return {Rational(BigInt(best), BigInt(g.edges.size())), best_strat};
}

Game repeat_game(const Game& g, int n) {
  g.validate();
  if (n < 1) throw domain_error("bad_repetition", "need n >= 1");

  double edge_count = std::pow(static_cast<double>(g.edges.size()), n);
  double accept_worst = 1;
  for (const auto& e : g.edges)
    accept_worst = std::max(accept_worst, static_cast<double>(e.accepted.size()));
  if (edge_count * std::pow(accept_worst, n) > 1e6)
    throw domain_error("too_large", "materialized repetition above budget");

  Game out;
  out.players = g.players;
  for (int i = 0; i < g.players; ++i) {
    out.vertex_counts.push_back(
        static_cast<int>(std::pow(g.vertex_counts[i], n)));
    out.alphabets.push_back(static_cast<int>(std::pow(g.alphabets[i], n)));
  }

  // One repeated edge per n-tuple of base edges; labels are read digitwise.
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    Game::Edge edge;
    edge.verts.assign(g.players, 0);
    for (int j = 0; j < n; ++j) {
      const auto& base = g.edges[digit[j]];
      for (int i = 0; i < g.players; ++i)
        edge.verts[i] = edge.verts[i] * g.vertex_counts[i] + base.verts[i];
    }
    // Accepted tuples: per-coordinate product of the base accepted sets.
    std::vector<std::set<std::vector<int>>::const_iterator> pick(n);
    bool empty = false;
    for (int j = 0; j < n; ++j) {
      const auto& acc = g.edges[digit[j]].accepted;
      if (acc.empty()) {
        empty = true;
        break;
      }
      pick[j] = acc.begin();
    }
    if (!empty) {
      while (true) {
        std::vector<int> tuple(g.players, 0);
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < g.players; ++i)
            tuple[i] = tuple[i] * g.alphabets[i] + (*pick[j])[i];
        edge.accepted.insert(std::move(tuple));
        int j = n - 1;
        while (j >= 0 && std::next(pick[j]) == g.edges[digit[j]].accepted.end()) {
          pick[j] = g.edges[digit[j]].accepted.begin();
          --j;
        }
        if (j < 0) break;
        ++pick[j];
      }
    }
    out.edges.push_back(std::move(edge));

    int j = n - 1;
    while (j >= 0 && ++digit[j] == g.edges.size()) digit[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

}  // namespace kwise
