#pragma once

#include <cstdint>

#include <functional>

namespace isac {

/// Caps the worker count for all parallel loops. 0 restores the default
/// (ISAC_THREADS env var if set, hardware concurrency otherwise).
void set_max_threads(int n);

int max_threads();

namespace detail {
void parallel_for_impl(std::int64_t n,
                       const std::function<void(std::int64_t)>& body);
}

/// Runs body(i) for i in [0, n). Work items must be independent; each one
/// may only write state owned by its own index, which keeps results
/// identical for every thread count. Reductions happen after the loop, in
/// index order.
template <typename F>
void parallel_for(std::int64_t n, F&& body) {
  detail::parallel_for_impl(n, std::function<void(std::int64_t)>(body));
}

}  // namespace isac
