#pragma once

#include <cstddef>
#include <functional>

namespace movewin::detail {

/// Worker count: hardware concurrency, capped by MOVEWIN_THREADS when set.
int thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads.
/// The first exception thrown by any job is rethrown after all jobs finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace movewin::detail
