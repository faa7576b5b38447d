#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace astride::detail {

/// Runs body(i) for i in [0, count), splitting the range over hardware threads.
/// Writes must go to disjoint, pre-sized slots so the result is deterministic.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t grain = 1) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, count / std::max<std::size_t>(1, grain));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace astride::detail
