#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace funnel::detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count). Each index is processed exactly once and
// writes must go to disjoint locations, so the result is identical for any
// thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = threads - 1;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace funnel::detail
