#ifndef QPM_THREADING_HPP
#define QPM_THREADING_HPP

#include <functional>

namespace qpm {

// Worker count: QPM_THREADS env var when set (clamped to [1, 64]),
// otherwise hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Results must go to disjoint slots; the
// partition is deterministic and output does not depend on thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace qpm

#endif
