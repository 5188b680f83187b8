#ifndef CLUBFORGE_PARALLEL_HPP
#define CLUBFORGE_PARALLEL_HPP

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace clubforge {

inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Splits [0, total) into contiguous chunks, one per worker, and runs
/// fn(worker_index, begin, end) on each. Workers must only touch their own
/// state; callers merge results in worker order so the outcome is
/// independent of the job count.
inline void parallel_chunks(std::uint64_t total, int jobs,
                            const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    int workers = resolve_jobs(jobs);
    if (workers <= 1 || total < 2) {
        fn(0, 0, total);
        return;
    }
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t chunk = total / static_cast<std::uint64_t>(workers);
    const std::uint64_t rem = total % static_cast<std::uint64_t>(workers);
    std::uint64_t begin = 0;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        std::uint64_t end = begin + len;
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace clubforge

#endif
