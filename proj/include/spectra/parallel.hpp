#pragma once

// Deterministic fork-join helpers. Work is split into contiguous index blocks;
// results are written by index, so output never depends on the worker count.

#include <cstddef>
#include <functional>

namespace spectra::parallel {

/// Worker cap: SPECTRA_THETA_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n). Exceptions are rethrown on the caller's
/// thread; when several blocks fail, the lowest block wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace spectra::parallel
