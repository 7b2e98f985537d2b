#pragma once

#include <cstddef>
#include <functional>

namespace doflab {

// Requested worker count capped by DOFLAB_MAX_WORKERS (if set) and floored at 1.
std::size_t effective_workers(std::size_t requested);

// Runs job(i) for i in [0, count). Jobs must write only to their own slots.
// If any job throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job);

}  // namespace doflab
