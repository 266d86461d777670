// Index-parallel loop used for grid evaluation. Results are written by
// index, so output order never depends on scheduling.

#ifndef CPT_PARALLEL_HPP
#define CPT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cpt {

/// Worker count: hardware concurrency, capped by CPT_SHIFT_THREADS when set
/// to a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, n); nested calls from a worker run inline.
/// If any call throws, the exception from the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}

#endif
