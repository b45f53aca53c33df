#pragma once

#include <cstddef>
#include <functional>

namespace kwise {

// Global worker cap used by the heavy exact sums; the CLI's --threads flag
// sets it. Results are recombined in fixed chunk order, so the output is
// identical for any worker count.
void set_thread_cap(int threads);
int thread_cap();

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n, never on the worker count.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn);

}  // namespace kwise
