#include "sfs/parallel.hpp"

#include <cstdlib>

namespace sfs {

int thread_budget() {
    static const int budget = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw <= 0) hw = 1;
        if (const char* env = std::getenv("SFS_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1) hw = std::min(hw, cap);
        }
        return std::min(hw, 64);
    }();
    return budget;
}

double parallel_max(int n, const std::function<double(int)>& fn) {
    const int threads = std::min(thread_budget(), std::max(1, n / 1024));
    if (threads <= 1) {
        double best = 0.0;
        for (int i = 0; i < n; ++i) best = std::max(best, fn(i));
        return best;
    }
    std::vector<double> partial(threads, 0.0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            double best = 0.0;
            for (int i = t; i < n; i += threads) best = std::max(best, fn(i));
            partial[t] = best;
        });
    }
    for (auto& th : pool) th.join();
    double best = 0.0;
    for (double v : partial) best = std::max(best, v);
    return best;
}

}  // namespace sfs
