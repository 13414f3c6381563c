#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace wavseg {

/// Worker count: hardware concurrency, capped by WAVSEG_THREADS when set.
unsigned default_thread_count();

/// Runs body(0) ... body(n - 1) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Independent seed for stream `stream` of a run seeded with `base`
/// (splitmix64 finaliser over both words).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace wavseg
