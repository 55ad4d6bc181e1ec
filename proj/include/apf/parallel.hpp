#pragma once

#include <cstddef>
#include <functional>

namespace apf {

// Worker cap for internal loops. 0 means "use hardware concurrency".
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(begin, end) over contiguous chunks of [0, count). Chunks never
// overlap, so writes to disjoint output slots keep results independent of the
// thread count.
void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace apf
