#pragma once

#include <cstddef>
#include <functional>

namespace kap {

// Worker count used by parallel_for; at least 1.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Callers write results into slot i so that the
// merged output does not depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace kap
