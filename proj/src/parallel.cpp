#include "physector/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace physector {

int resolve_thread_count(int requested) {
    int threads = requested > 0 ? requested
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) {
        threads = 1;
    }
    if (const char* env = std::getenv("PHYSECTOR_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0 && cap < threads) {
            threads = static_cast<int>(cap);
        }
    }
    return threads;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int n_threads) {
    const int threads = resolve_thread_count(n_threads);
    if (n == 0) {
        return;
    }
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    // Keep the exception from the lowest failing index so reruns with a
    // different worker count report the same error.
    std::mutex error_mutex;
    std::exception_ptr first_error = nullptr;
    std::size_t first_error_index = n;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& thread : pool) {
        thread.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace physector
