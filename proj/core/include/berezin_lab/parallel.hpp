#pragma once

#include <cstddef>
#include <functional>

namespace berezin_lab {

/// Worker count: hardware concurrency, capped by BEREZIN_LAB_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous blocks on worker threads.
/// If any call throws, the exception raised at the smallest index is
/// rethrown after all workers join, so failures are worker-count independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
/// Same with an explicit worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t max_workers);

}  // namespace berezin_lab
