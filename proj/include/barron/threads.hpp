#pragma once

#include <cstdint>
#include <functional>

namespace barron {

// Worker-count knob for the chunked loops below.  Results never depend on it:
// every chunk derives its RNG stream from (seed, chunk index) and partial
// results are combined in chunk order.
void set_max_threads(int n);
int max_threads();

inline constexpr std::int64_t kMcChunk = 8192;

// Invokes fn(chunk_index, begin, count) for every chunk of [0, n).  fn must
// only write to state owned by its chunk.
void for_each_chunk(std::int64_t n, std::int64_t chunk,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

}  // namespace barron
