#pragma once

// Deterministic work partitioning: results must be written to per-index
// slots so the assembled output is identical for any worker count.

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace bunkbed {

inline int env_default_workers() {
    if (const char* env = std::getenv("BUNKBED_WORKERS")) {
        try {
            const int workers = std::stoi(env);
            if (workers >= 1)
                return workers;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers < 1)
        workers = 1;
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    const auto threads_count = static_cast<std::size_t>(workers) < count
                                   ? static_cast<std::size_t>(workers)
                                   : count;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(threads_count);
    for (std::size_t t = 0; t < threads_count; ++t) {
        const std::size_t begin = count * t / threads_count;
        const std::size_t end = count * (t + 1) / threads_count;
        threads.emplace_back([&, t, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads)
        th.join();
    for (const auto& err : errors)
        if (err)
            std::rethrow_exception(err);
}

} // namespace bunkbed
