#pragma once

#include <cstddef>
#include <functional>

namespace madqueue {

/// Worker count used by library loops. Defaults to MADQUEUE_THREADS when set,
/// otherwise the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots and reduce
/// in index order afterwards so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace madqueue
