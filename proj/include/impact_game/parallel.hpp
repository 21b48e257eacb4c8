#pragma once

#include <cstddef>
#include <functional>

namespace impact_game {

/// Worker count: hardware concurrency, capped by IMPACT_GAME_THREADS.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// runs exactly once; the first exception thrown is rethrown after all
/// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace impact_game
