#include "kwise/classify.hpp"

namespace kwise {

void ConnectivityReport::check_chain() const {
  if (connected && has_abelian_embedding)
    throw consistency_error("chain_violation",
                            "connected distribution classified with an Abelian embedding");
  if (!has_abelian_embedding && !pairwise_connected)
    throw consistency_error("chain_violation",
                            "no-embedding distribution classified not pairwise-connected");
  if (has_z_embedding && !has_abelian_embedding)
    throw consistency_error("chain_violation",
                            "Z-embedding implies an Abelian embedding");
}

ConnectivityReport classify(const JointDistribution& mu) {
  ConnectivityReport rep;
  auto conn = is_connected(mu);
  rep.connected = conn.connected;
  rep.support_partition = std::move(conn.partition);

  rep.z_witness = detect_z_embedding(mu);
  rep.has_z_embedding = rep.z_witness.has_value();
  rep.abelian_witness = detect_abelian_embedding(mu);
  rep.has_abelian_embedding = rep.abelian_witness.has_value();

  auto pw = is_pairwise_connected(mu);
  rep.pairwise_connected = pw.pairwise_connected;
  rep.pair_partitions = std::move(pw.pair_partitions);

  rep.check_chain();
  return rep;
}

}  // namespace kwise
