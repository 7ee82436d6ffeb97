#pragma once

#include <functional>

namespace mirror {

// Worker count: MIRROR_CHARGE_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n); results must be written to per-index slots by the caller.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace mirror
