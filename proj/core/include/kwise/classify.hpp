#pragma once

#include <optional>

#include "kwise/distribution.hpp"
#include "kwise/embedding.hpp"

namespace kwise {

// The implication chain connected => no Abelian embedding => pairwise-
// connected is enforced at construction: a report violating it throws.
struct ConnectivityReport {
  bool connected = false;
  bool has_abelian_embedding = false;
  bool has_z_embedding = false;
  bool pairwise_connected = false;

  std::optional<EmbeddingWitness> abelian_witness;
  std::optional<EmbeddingWitness> z_witness;
  ComponentPartition support_partition;
  std::vector<ComponentPartition> pair_partitions;

  void check_chain() const;
};

ConnectivityReport classify(const JointDistribution& mu);

}  // namespace kwise
