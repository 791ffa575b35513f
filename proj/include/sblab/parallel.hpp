#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace sblab {

/// Number of workers used when the caller passes 0.
inline unsigned default_workers()
{
    unsigned const hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs task(i) for every i in [0, count) on a bounded pool and returns the
/// results ordered by i, so the output never depends on the worker count.
/// If tasks throw, the exception from the lowest index is rethrown.
template<class F>
auto run_indexed(std::size_t count, unsigned workers, F&& task)
    -> std::vector<decltype(task(std::size_t{}))>
{
    using R = decltype(task(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(task(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned const n = std::max(1u, std::min<unsigned>(workers ? workers : default_workers(),
                                                       static_cast<unsigned>(count)));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) {
            pool.emplace_back(work);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (auto const& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

} // namespace sblab
