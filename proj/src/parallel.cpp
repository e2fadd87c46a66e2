#include "gdrb/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace gdrb {

namespace {

std::atomic<unsigned> g_workers{ 0 };

} // namespace

void set_parallelism(unsigned workers)
{
    g_workers.store(workers);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    unsigned workers = g_workers.load();
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    workers = std::min<std::size_t>(workers, n);
    std::atomic<std::size_t> next{ 0 };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                fn(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace gdrb
