#ifndef SYMBREAK_PARALLEL_HPP
#define SYMBREAK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace symbreak {

// Runs fn(chunk_id, begin, end) for a fixed partition of [0, n_items) into
// n_chunks contiguous chunks, executed by up to `threads` worker threads.
// The partition depends only on (n_items, n_chunks), never on the thread
// count, so per-chunk accumulators combined in chunk order give results that
// are reproducible for any --threads value.
void run_fixed_chunks(std::size_t n_items, std::size_t n_chunks, int threads,
                      const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Default chunk count for deterministic reductions.
inline constexpr std::size_t kReductionChunks = 64;

}  // namespace symbreak

#endif
