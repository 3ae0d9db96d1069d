#include "radiance/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace radiance {

namespace {
std::atomic<std::size_t> g_default_threads{0};
}

void set_default_thread_count(std::size_t n) { g_default_threads.store(n); }

std::size_t resolve_thread_count(std::size_t requested) {
    if (const char* env = std::getenv("RADIANCE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<std::size_t>(v);
    }
    if (requested > 0)
        return requested;
    if (const std::size_t d = g_default_threads.load(); d > 0)
        return d;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(resolve_thread_count(), n_blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks)
                return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace radiance
