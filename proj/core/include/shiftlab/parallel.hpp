#pragma once

#include <cstddef>
#include <functional>

namespace shiftlab {

// Worker count resolution: SHIFT_THREADS env var, 0 or unset means auto.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Work is split across workers; callers get
// determinism by writing into preallocated slots indexed by i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace shiftlab
