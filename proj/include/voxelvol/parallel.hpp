#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace voxelvol {

// The index range [0,n) is split into contiguous chunks, one worker per
// chunk; callers merge per-chunk outputs in chunk order so results do not
// depend on scheduling.
int effective_threads(int requested = 0);
void set_default_threads(int n);

void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t begin, std::int64_t end,
                                              int chunk_index)>& fn);

}  // namespace voxelvol
