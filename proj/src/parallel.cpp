#include <cpt/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

namespace cpt {

namespace {

// Set on pool workers so nested loops run inline instead of spawning
// another pool per outer index.
thread_local bool in_worker = false;

}

unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CPT_SHIFT_THREADS")) {
        unsigned cap = 0;
        const char* end = env + std::strlen(env);
        const auto res = std::from_chars(env, end, cap);
        if (res.ec == std::errc() && res.ptr == end && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    if (n == 0) {
        return;
    }
    const std::size_t workers =
        in_worker ? 1 : std::min<std::size_t>(worker_count(), n);
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&]() {
            const bool outer = in_worker;
            in_worker = true;
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
            in_worker = outer;
        };
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(run);
        }
        run();
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}
