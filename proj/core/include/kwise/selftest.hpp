#pragma once

#include <string>
#include <vector>

namespace kwise::selftest {

struct Result {
  bool passed = true;
  std::vector<std::string> failures;
};

// Seeded invariant suite for one module; names: indexing, distributions,
// embeddings, analysis, norms, correlations, patterns, csp, games.
Result run(const std::string& module, std::uint64_t seed = 7);

std::vector<std::string> module_names();

}  // namespace kwise::selftest
