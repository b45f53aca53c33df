#include "kwise/distribution.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kwise {

namespace {

// Union-find; small and allocation-friendly enough for desk-scale graphs.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

ComponentPartition partition_from_dsu(Dsu& dsu) {
  ComponentPartition part;
  part.component.resize(dsu.parent.size());
  std::map<int, int> relabel;
  for (std::size_t v = 0; v < dsu.parent.size(); ++v) {
    int root = dsu.find(static_cast<int>(v));
    auto [it, fresh] = relabel.try_emplace(root, part.component_count);
    if (fresh) ++part.component_count;
    part.component[v] = it->second;
  }
  return part;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<int> alphabets,
                                     std::vector<Atom> atoms,
                                     ShrinkAlphabets shrink)
    : alphabets_(std::move(alphabets)), atoms_(std::move(atoms)) {
  if (alphabets_.empty()) throw domain_error("bad_dist", "arity must be >= 1");
  for (int m : alphabets_)
    if (m < 1) throw domain_error("bad_dist", "alphabet sizes must be >= 1");
  if (atoms_.empty()) throw domain_error("bad_dist", "no atoms");

  Rational total = 0;
  std::vector<std::vector<int>> seen;
  for (auto& a : atoms_) {
    if (static_cast<int>(a.tuple.size()) != arity())
      throw domain_error("bad_dist", "atom arity mismatch");
    for (int i = 0; i < arity(); ++i)
      if (a.tuple[i] < 0 || a.tuple[i] >= alphabets_[i])
        throw domain_error("bad_dist", "atom symbol out of range");
    if (a.p <= 0) throw domain_error("bad_dist", "atom probabilities must be positive");
    total += a.p;
    seen.push_back(a.tuple);
  }
  if (total != 1) throw domain_error("bad_dist", "atom probabilities must sum to exactly 1");
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw domain_error("bad_dist", "duplicate atom tuples");

  if (!has_full_marginal_support()) {
    if (shrink == ShrinkAlphabets::no)
      throw domain_error("missing_marginal_support",
                         "some alphabet symbol never occurs; pass ShrinkAlphabets::yes "
                         "to relabel the alphabets");
    // Relabel each alphabet onto its occurring symbols, preserving order.
    for (int i = 0; i < arity(); ++i) {
      std::vector<int> occurs(alphabets_[i], -1);
      for (const auto& a : atoms_) occurs[a.tuple[i]] = 0;
      int next = 0;
      for (int s = 0; s < alphabets_[i]; ++s)
        if (occurs[s] == 0) occurs[s] = next++;
      for (auto& a : atoms_) a.tuple[i] = occurs[a.tuple[i]];
      alphabets_[i] = next;
    }
  }
}

JointDistribution JointDistribution::uniform_on(
    std::vector<int> alphabets, std::vector<std::vector<int>> support,
    ShrinkAlphabets shrink) {
  std::vector<Atom> atoms;
  Rational p(1, static_cast<long>(support.size()));
  for (auto& t : support) atoms.push_back({std::move(t), p});
  return JointDistribution(std::move(alphabets), std::move(atoms), shrink);
}

Rational JointDistribution::min_atom() const {
  Rational m = atoms_[0].p;
  for (const auto& a : atoms_) m = std::min(m, a.p);
  return m;
}

bool JointDistribution::has_full_marginal_support() const {
  for (int i = 0; i < arity(); ++i) {
    std::vector<char> seen(alphabets_[i], 0);
    for (const auto& a : atoms_) seen[a.tuple[i]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
  }
  return true;
}

JointDistribution JointDistribution::marginal(const std::vector<int>& coords) const {
  if (coords.empty()) throw domain_error("bad_marginal", "coordinate set must be nonempty");
  std::vector<int> sorted = coords;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int c : sorted)
    if (c < 0 || c >= arity()) throw domain_error("bad_marginal", "coordinate out of range");

  std::map<std::vector<int>, Rational> acc;
  for (const auto& a : atoms_) {
    std::vector<int> t;
    for (int c : sorted) t.push_back(a.tuple[c]);
    acc[t] += a.p;
  }
  std::vector<Atom> atoms;
  for (auto& [t, p] : acc) atoms.push_back({t, p});
  std::vector<int> alph;
  for (int c : sorted) alph.push_back(alphabets_[c]);
  return JointDistribution(std::move(alph), std::move(atoms));
}

std::vector<Rational> JointDistribution::marginal_vector(int coord) const {
  if (coord < 0 || coord >= arity())
    throw domain_error("bad_marginal", "coordinate out of range");
  std::vector<Rational> out(alphabets_[coord], Rational(0));
  for (const auto& a : atoms_) out[a.tuple[coord]] += a.p;
  return out;
}

std::vector<std::vector<char>> JointDistribution::pair_support(int i, int j) const {
  std::vector<std::vector<char>> adj(alphabets_[i],
                                     std::vector<char>(alphabets_[j], 0));
  for (const auto& a : atoms_) adj[a.tuple[i]][a.tuple[j]] = 1;
  return adj;
}

ConnectivityResult is_connected(const JointDistribution& mu) {
  const auto& atoms = mu.atoms();
  int n = static_cast<int>(atoms.size());
  Dsu dsu(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int diff = 0;
      for (int c = 0; c < mu.arity() && diff <= 1; ++c)
        diff += atoms[a].tuple[c] != atoms[b].tuple[c];
      if (diff == 1) dsu.unite(a, b);
    }
  }
  ConnectivityResult res;
  res.partition = partition_from_dsu(dsu);
  res.connected = res.partition.component_count == 1;
  return res;
}

PairwiseConnectivityResult is_pairwise_connected(const JointDistribution& mu) {
  PairwiseConnectivityResult res;
  res.pairwise_connected = true;
  for (int i = 0; i < mu.arity(); ++i) {
    for (int j = i + 1; j < mu.arity(); ++j) {
      int ni = mu.alphabet(i), nj = mu.alphabet(j);
      Dsu dsu(ni + nj);
      auto adj = mu.pair_support(i, j);
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < nj; ++b)
          if (adj[a][b]) dsu.unite(a, ni + b);
      auto part = partition_from_dsu(dsu);
      if (part.component_count != 1) res.pairwise_connected = false;
      res.pairs.emplace_back(i, j);
      res.pair_partitions.push_back(std::move(part));
    }
  }
  return res;
}

}  // namespace kwise
