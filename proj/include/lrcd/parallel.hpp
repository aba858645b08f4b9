#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace lrcd {

// Run fn(0..count-1) on up to `threads` workers. Tasks must write only to
// their own output slot; results are then independent of scheduling. The
// first escaped exception is rethrown on the caller thread after join.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, count);
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lrcd
