#pragma once
#include <cstddef>
#include <functional>

namespace ect {

// Worker count for index-parallel loops: the ECT_THREADS environment variable
// when set (clamped to [1, 64]), otherwise the hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Bodies must write to disjoint slots; the
// result is then identical for every worker count. Exceptions propagate.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ect
