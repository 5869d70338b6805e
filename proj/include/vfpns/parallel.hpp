#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace vfpns {

// Fork-join worker pool for cell-parallel kernels.
//
// Work is split into fixed-size chunks whose boundaries depend only on the
// problem size, never on the worker count; reductions accumulate per chunk
// and combine partials in chunk order. Results are therefore bit-identical
// for any number of threads.
class ThreadPool {
public:
    explicit ThreadPool(int n_threads = 1);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int n_threads() const { return static_cast<int>(workers_.size()) + 1; }

    /// Runs fn(begin, end) over [0, n) split into chunks of `chunk` items.
    void parallel_for(long n, long chunk, const std::function<void(long, long)>& fn);

    /// Sum of fn(begin, end) over all chunks, combined in chunk order.
    double parallel_reduce(long n, long chunk, const std::function<double(long, long)>& fn);

private:
    void worker_loop();
    void run_chunks();

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    const std::function<void(long, long)>* job_ = nullptr;
    long job_n_ = 0;
    long job_chunk_ = 0;
    std::atomic<long> next_chunk_{0};
    int pending_workers_ = 0;
    unsigned long generation_ = 0;
    bool stop_ = false;
};

/// Default chunk size for loops over spatial cells.
inline long default_chunk(long n) {
    long c = 256;
    return c < n ? c : (n > 0 ? n : 1);
}

} // namespace vfpns
