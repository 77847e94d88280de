#include "gapforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace gapforge {
namespace {
std::atomic<unsigned> g_threads{1};
}

void set_parallelism(unsigned threads) { g_threads = std::max(1u, threads); }

unsigned parallelism() { return g_threads; }

std::size_t parallel_chunks(std::uint64_t count,
                            const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& body) {
  const std::uint64_t workers = std::min<std::uint64_t>(g_threads.load(), std::max<std::uint64_t>(count, 1));
  if (workers <= 1) {
    body(0, count, 0);
    return 1;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t step = (count + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(count, w * step);
    const std::uint64_t end = std::min(count, begin + step);
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return workers;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace gapforge
