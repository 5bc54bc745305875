#pragma once

#include <cstddef>
#include <functional>

namespace fracdmd {

// Worker count used by the library's internal loops. Read once from the
// FRACDMD_THREADS environment variable; defaults to hardware concurrency.
unsigned thread_count();

// Calls body(i) for every i in [0, n). Iterations must be independent and
// write to disjoint storage; the result is then identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracdmd
