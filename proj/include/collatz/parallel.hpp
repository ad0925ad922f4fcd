#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace collatz {

[[nodiscard]] inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(chunk) for every chunk in [0, chunk_count) on up to `workers`
// threads. Chunks are claimed in increasing order; completion order is
// unspecified. The first exception thrown by fn is rethrown after all
// workers join.
template <class Fn>
void for_each_chunk(std::size_t chunk_count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), chunk_count));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunk_count; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
                    if (c >= chunk_count) return;
                    try {
                        fn(c);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next.store(chunk_count, std::memory_order_relaxed);
                        return;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace collatz
