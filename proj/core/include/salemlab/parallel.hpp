#pragma once

#include <cstdint>
#include <functional>

namespace salemlab {

// Worker count: an explicit override if set, else SALEMLAB_THREADS, else the
// hardware concurrency. Always >= 1.
int worker_count();
void set_worker_count(int workers);  // 0 restores the environment default

// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
// runs exactly once; callers write results into slot i, so the outcome does
// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace salemlab
