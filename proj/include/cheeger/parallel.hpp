#pragma once

#include <cstddef>
#include <functional>

namespace cheeger {

/// Worker count: CHEEGER_THREADS if set and positive, else the hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) across up to thread_count() threads. Indices are split into
/// contiguous blocks, so callers writing to slot i get deterministic results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cheeger
