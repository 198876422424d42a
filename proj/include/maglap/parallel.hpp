#pragma once

#include <cstddef>
#include <functional>

namespace maglap {

/// Worker count from MAGLAP_THREADS; 1 when unset or unparsable.
std::size_t thread_count();

/// Calls body(i) for i in [0, count). Indices are handed out in contiguous
/// chunks, so results written to slot i are independent of the thread count.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = thread_count());

}  // namespace maglap
