#pragma once

#include <cstddef>
#include <functional>

namespace hsurf {

// Worker cap shared by all parallel loops; 0 means hardware concurrency.
void set_thread_cap(int n);
int thread_cap();

// Runs body(i) for i in [0, n). Each index is owned by one worker, so callers
// that write results by index and reduce afterwards in index order get
// bit-identical output for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hsurf
