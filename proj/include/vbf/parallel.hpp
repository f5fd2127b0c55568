#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vbf {

/// Worker count used when a caller passes jobs == 0.
/// Reads VBF_JOBS from the environment, else hardware concurrency.
unsigned default_jobs();

/// Runs body(begin, end, worker) over [0, count) split into chunks handed out
/// dynamically. Results must be written to per-index slots (or reduced with
/// order-insensitive operations) so the outcome does not depend on scheduling.
/// The first exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body, std::size_t chunk = 0) {
    if (count == 0) return;
    if (jobs == 0) jobs = default_jobs();
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    if (chunk == 0) chunk = std::max<std::size_t>(1, count / (static_cast<std::size_t>(jobs) * 8));
    if (jobs <= 1) {
        for (std::size_t b = 0; b < count; b += chunk) body(b, std::min(count, b + chunk), 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto run = [&](unsigned worker) {
        try {
            for (;;) {
                std::size_t b = next.fetch_add(chunk);
                if (b >= count) break;
                body(b, std::min(count, b + chunk), worker);
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs - 1);
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline unsigned resolve_jobs(unsigned jobs) { return jobs == 0 ? default_jobs() : jobs; }

}  // namespace vbf
