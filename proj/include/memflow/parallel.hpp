// parallel.hpp: index-parallel loop over a fixed range

#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace memflow {

// requested > 0 is honoured as is; otherwise hardware concurrency (at least 1).
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(i) for every i in [0, count). Work is handed out dynamically, so fn must
// write its result to a slot owned by i; callers reduce in index order afterwards.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    const int workers = std::min(resolve_threads(threads), std::max(count, 1));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
}

} // namespace memflow
