#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace pgw {

/// Requested worker count, 0 means "all hardware threads".
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Split [0, total) into `workers` contiguous ranges and run
/// fn(worker_index, begin, end) on each, one thread per range.
/// Results must be merged by the caller with an order-independent
/// (associative, commutative) operation so the outcome does not depend
/// on the worker count.
template <class Fn>
void parallel_ranges(std::uint64_t total, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (static_cast<std::uint64_t>(workers) > total) workers = total ? static_cast<int>(total) : 1;
    if (workers <= 1) {
        fn(0, std::uint64_t{0}, total);
        return;
    }
    const std::uint64_t chunk = total / workers;
    const std::uint64_t extra = total % workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t begin = 0;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        std::uint64_t end = begin + len;
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace pgw
