#pragma once

#include <cstddef>
#include <functional>

namespace schrolab {

/// Number of worker threads used by parallel loops. Defaults to 1. Results
/// never depend on this value: every parallel loop writes into disjoint
/// slots and reductions happen afterwards in index order.
std::size_t thread_count() noexcept;
void set_thread_count(std::size_t n) noexcept;

/// Calls `body(i)` for every i in [0, n), splitting the range into contiguous
/// chunks across `thread_count()` threads. Exceptions thrown by `body` are
/// rethrown on the calling thread (first one by chunk order).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace schrolab
