#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace scatterlab {

// Split [0, total) into `jobs` contiguous ranges and run fn(job, lo, hi) on a
// thread per range. Chunk boundaries depend only on (total, jobs), and callers
// merge per-range results in range order, so results are independent of
// scheduling.
inline void parallel_ranges(uint64_t total, unsigned jobs,
                            const std::function<void(unsigned, uint64_t, uint64_t)>& fn) {
    if (jobs <= 1 || total <= 1) {
        fn(0, 0, total);
        return;
    }
    if (jobs > total) jobs = static_cast<unsigned>(total);
    const uint64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        const uint64_t lo = t * chunk;
        const uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, t, lo, hi] { fn(t, lo, hi); });
    }
    for (auto& th : threads) th.join();
}

} // namespace scatterlab
