#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace qtsieve {

// Index-parallel map with deterministic output: workers own disjoint index
// ranges and write into caller-provided slots; any reduction happens
// sequentially afterwards, so results are independent of the worker count.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nw = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace qtsieve
