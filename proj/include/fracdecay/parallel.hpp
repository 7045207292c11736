#pragma once

#include <cstddef>
#include <functional>

namespace fracdecay {

/// Worker count used by module-internal grids. Defaults to the
/// FRACDECAY_THREADS environment variable, else hardware concurrency.
std::size_t thread_count();

/// Overrides the worker count; 0 restores the default.
void set_thread_count(std::size_t n);

/// Calls body(i) for every i in [0, n). Each index is visited exactly once;
/// callers write results into index-addressed slots so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracdecay
