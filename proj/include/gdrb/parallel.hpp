#pragma once

#include <cstddef>
#include <functional>

namespace gdrb {

/// Run fn(i) for i in [0, n) across worker threads. Tasks must be independent;
/// results written to per-index slots are identical to a serial run.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Force the worker count (0 = hardware default). Used by determinism tests.
void set_parallelism(unsigned workers);

} // namespace gdrb
