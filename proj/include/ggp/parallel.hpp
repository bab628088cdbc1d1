#pragma once

#include <cstddef>
#include <functional>

namespace ggp {

/// Number of workers to use: GGP_WORKERS if set to a positive integer, else
/// std::thread::hardware_concurrency() (at least 1).
int default_workers();

/// Calls body(i) for i in [0, n) on up to `workers` threads. Items are claimed
/// through an atomic counter; the first exception thrown by any item is
/// rethrown after all threads have joined. Results must be written to
/// per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace ggp
