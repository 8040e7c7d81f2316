#include "demreg/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace demreg {

int thread_budget() {
    int budget = 0;
    if (const char* env = std::getenv("DEMREG_THREADS")) {
        budget = std::atoi(env);
    }
    if (budget <= 0) {
        budget = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(budget, 1);
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    const long workers = std::min<long>(thread_budget(), n);
    if (workers == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    // Contiguous blocks; exceptions from workers terminate (callers do not
    // throw from parallel bodies).
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    const long chunk = (n + workers - 1) / workers;
    for (long w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace demreg
