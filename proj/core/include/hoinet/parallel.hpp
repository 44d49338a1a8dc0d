#ifndef HOINET_PARALLEL_HPP
#define HOINET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hoinet {

/// Worker count from the HOINET_THREADS environment variable, falling
/// back to std::thread::hardware_concurrency().
int default_thread_count();

/// Runs fn(i) for i in [0, n) on up to n_threads workers. Tasks must be
/// independent; the first exception raised is rethrown on the caller.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

}  // namespace hoinet

#endif
