#pragma once

#include <cstddef>
#include <functional>

namespace manifoldnet {

/// MANIFOLDNET_THREADS if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means
/// default_thread_count()). Each index runs exactly once; if any call
/// throws, the exception from the lowest failing index is rethrown after all
/// workers finish, so failures do not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace manifoldnet
