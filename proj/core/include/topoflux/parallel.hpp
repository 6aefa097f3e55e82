#pragma once

#include <cstddef>
#include <functional>

namespace topoflux {

/// Number of worker threads the library may use.  Reads TOPOFLUX_THREADS once;
/// unset or invalid values fall back to the hardware concurrency.
unsigned thread_budget();

/// Runs fn(i) for i in [0, count).  Tasks must be independent; callers that
/// need deterministic reductions combine per-index results afterwards in
/// index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace topoflux
