#pragma once

#include <cstddef>
#include <functional>

namespace besov_rough {

/// Worker cap for parallel loops. 0 means "use hardware concurrency".
void set_workers(unsigned n);
unsigned workers();

/// Runs fn(i) for i in [0, n) across the worker pool. Each index is processed once;
/// callers write results into index-addressed slots so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace besov_rough
