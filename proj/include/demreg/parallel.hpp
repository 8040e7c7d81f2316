#pragma once

#include <functional>

namespace demreg {

/// Worker count: DEMREG_THREADS when set to a positive value, otherwise the
/// hardware concurrency (DEMREG_THREADS=0 or unset means auto).
int thread_budget();

/// Runs fn(i) for i in [0, n) across up to thread_budget() workers using a
/// fixed block partition. Calls must write to disjoint state: the partition
/// (not the thread count) defines the iteration space, so any budget yields
/// identical results.
void parallel_for(long n, const std::function<void(long)>& fn);

} // namespace demreg
