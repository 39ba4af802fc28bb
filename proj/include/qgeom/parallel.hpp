#pragma once

#include <functional>

namespace qgeom {

// Worker count: hardware concurrency capped by QGEOM_THREADS.
int worker_count();

// Runs body(i) for i in [0, count); each index is written by exactly one worker.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace qgeom
