#pragma once
// Deterministic parallel-for: the index range is split into fixed chunks and
// every worker writes only into its own slots, so results never depend on the
// worker count.

#include <cstddef>
#include <thread>
#include <vector>

namespace fresnel2d {

template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    const std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
        const std::size_t lo = i * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace fresnel2d
