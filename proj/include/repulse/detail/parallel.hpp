#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace repulse::detail {

// g(i) for i in [0, n), spread over worker threads in contiguous chunks.
// Each index is handled by exactly one call, so results written per index do
// not depend on the thread count.
template <class G>
void parallel_for(std::size_t n, unsigned threads, G&& g) {
    unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>((n + 63) / 64)));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) g(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
        std::size_t a = w * chunk, b = std::min(n, a + chunk);
        if (a >= b) break;
        pool.emplace_back([a, b, &g] {
            for (std::size_t i = a; i < b; ++i) g(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace repulse::detail
