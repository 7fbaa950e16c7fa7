#pragma once

#include <cstddef>
#include <functional>

namespace framebound {

/// Worker cap: FRAMEBOUND_THREADS when set (>= 1), else the hardware count.
int thread_cap();

/// Runs fn(0..n-1), possibly concurrently. Tasks must write to disjoint
/// slots; combine the slots afterwards in a fixed order (pairwise_sum) so
/// the result does not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace framebound
