#pragma once

#include <cstddef>
#include <functional>

namespace kw {

// worker count: KWLAB_THREADS if set and positive, else hardware concurrency
unsigned thread_count();

// calls fn(i) for i in [0, n); each index is handled exactly once, order unspecified
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace kw
