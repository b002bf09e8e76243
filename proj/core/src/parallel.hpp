#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace splab::detail {

// Runs fn(i) for i in [0, n) on up to `workers` threads and returns the
// results in index order. Merging in index order keeps every reduction
// deterministic no matter how the work was scheduled.
template <class R, class Fn>
std::vector<R> ordered_parallel_map(std::size_t n, unsigned workers, Fn&& fn) {
    std::vector<R> out(n);
    if (n == 0) return out;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto body = [&] {
        std::size_t i;
        while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < n) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lk(error_mu);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    unsigned nthreads = static_cast<unsigned>(
        std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace splab::detail
