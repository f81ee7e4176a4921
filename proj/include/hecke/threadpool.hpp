#pragma once

// Work-stealing parallel map over an index range: workers pull chunks from a
// shared atomic counter.  Results are written into caller-owned slots, so the
// final reduction order is fixed regardless of thread count.

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hecke {

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
        const std::size_t chunk = 8;
        while (true) {
            std::size_t base = next.fetch_add(chunk);
            if (base >= count) return;
            std::size_t end = std::min(count, base + chunk);
            try {
                for (std::size_t i = base; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hecke
