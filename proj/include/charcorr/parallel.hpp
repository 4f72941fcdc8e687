#pragma once

#include <functional>
#include <thread>

#include "common.hpp"

namespace charcorr {

inline unsigned default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Run fn(lo, hi) over a static partition of [0, n). Each chunk writes only
// its own outputs, so results are identical for every thread count; any
// reduction happens afterwards in index order.
inline void parallel_chunks(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n == 0 ? 1 : n));
    if (threads <= 1 || n <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(fn, lo, hi);
    }
    for (auto& w : workers) w.join();
}

} // namespace charcorr
