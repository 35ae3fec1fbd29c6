#pragma once

#include <cstddef>
#include <functional>

namespace kslab {

/// Worker count: KSLAB_THREADS if set (>= 1), else the hardware count.
int thread_count();

/// Runs fn(i) for i in [0, n). Each index must write only its own output
/// slot; results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace kslab
