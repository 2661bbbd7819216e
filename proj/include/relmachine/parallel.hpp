#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace relmachine::cli {

/// Worker count: RELMACHINE_THREADS when set to a positive integer, else the
/// hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("RELMACHINE_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) on up to thread_budget() threads and
/// returns the results in index order. The first exception thrown by any
/// task is rethrown on the caller's thread.
template <class Fn>
auto ordered_parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using T = decltype(fn(std::size_t{}));
    std::vector<T> out(n);
    const std::size_t workers = std::min<std::size_t>(thread_budget(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace relmachine::cli
