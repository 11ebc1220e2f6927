#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace schmidtflat {

// Worker count: SCHMIDT_FLAT_THREADS caps it, default = hardware concurrency.
inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCHMIDT_FLAT_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return std::min<unsigned>(static_cast<unsigned>(n), hw);
    }
    return hw;
}

// Splits [0, n) into contiguous chunks, one worker per chunk. Results must be
// merged deterministically by the caller (chunk order is fixed).
inline void parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t chunk, std::size_t lo,
                                                     std::size_t hi)>& body) {
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2048) {
        body(0, 0, n);
        return;
    }
    std::size_t per = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::size_t chunk = 0;
    for (std::size_t lo = 0; lo < n; lo += per, ++chunk) {
        std::size_t hi = std::min(n, lo + per);
        pool.emplace_back(body, chunk, lo, hi);
    }
    for (auto& t : pool) t.join();
}

}  // namespace schmidtflat
