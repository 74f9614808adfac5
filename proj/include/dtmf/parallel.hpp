#pragma once

#include <cstddef>
#include <functional>

namespace dtmf {

// Worker cap: hardware concurrency, overridable by the DTMF_THREADS env var.
std::size_t thread_budget();

// Runs fn(0..n-1) across at most thread_budget() threads. Callers must make
// fn(i) write only to slot i of preallocated storage, so the outcome cannot
// depend on scheduling. The lowest-index exception wins and is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dtmf
