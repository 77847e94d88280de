#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace gapforge {

// Worker count used by enumeration-heavy checks; 1 means run inline.
void set_parallelism(unsigned threads);
unsigned parallelism();

// Splits [0, count) into contiguous chunks and runs body(begin, end, chunk_index) on each.
// Returns the number of chunks used.
std::size_t parallel_chunks(std::uint64_t count,
                            const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& body);

// SplitMix64 step, used to derive independent stream seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gapforge
