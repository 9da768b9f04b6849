#include "cyclotome/pool.hpp"

#include <atomic>

namespace cyclotome {

int& job_count() {
    static int jobs = [] {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? int(hw) : 2;
    }();
    return jobs;
}

void parallel_for(size_t n, const std::function<void(size_t)>& task) {
    int jobs = job_count();
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    size_t count = std::min(size_t(jobs), n);
    std::exception_ptr error;
    std::mutex error_mu;
    for (size_t w = 0; w < count; ++w)
        workers.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace cyclotome
