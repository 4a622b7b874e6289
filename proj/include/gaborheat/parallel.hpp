#pragma once

#include <cstddef>
#include <functional>

namespace gaborheat {

// Caps the number of worker threads used by parallel_for. 0 restores the
// hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, count). Each index is handled by exactly one
// thread, so results written to per-index slots are deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gaborheat
