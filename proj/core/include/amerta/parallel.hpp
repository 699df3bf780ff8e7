#pragma once

#include <cstddef>
#include <functional>

namespace amerta {

/// Runs body(0..count-1) on up to `threads` workers. Each index is handled by
/// exactly one worker; exceptions are rethrown on the calling thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Worker cap from AMERTA_THREADS, or `fallback` when unset or invalid.
int threads_from_env(int fallback = 1);

} // namespace amerta
