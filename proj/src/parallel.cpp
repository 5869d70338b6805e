#include "vfpns/parallel.hpp"

#include <algorithm>

namespace vfpns {

ThreadPool::ThreadPool(int n_threads) {
    int extra = std::max(0, n_threads - 1);
    workers_.reserve(extra);
    for (int t = 0; t < extra; ++t)
        workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lk(mutex_);
        stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& w : workers_) w.join();
}

void ThreadPool::worker_loop() {
    unsigned long seen = 0;
    for (;;) {
        {
            std::unique_lock<std::mutex> lk(mutex_);
            cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
        }
        run_chunks();
        {
            std::lock_guard<std::mutex> lk(mutex_);
            if (--pending_workers_ == 0) cv_done_.notify_all();
        }
    }
}

void ThreadPool::run_chunks() {
    const long n = job_n_;
    const long chunk = job_chunk_;
    for (;;) {
        long b = next_chunk_.fetch_add(chunk);
        if (b >= n) break;
        (*job_)(b, std::min(b + chunk, n));
    }
}

void ThreadPool::parallel_for(long n, long chunk, const std::function<void(long, long)>& fn) {
    if (n <= 0) return;
    chunk = std::max<long>(1, chunk);
    if (workers_.empty() || n <= chunk) {
        for (long b = 0; b < n; b += chunk) fn(b, std::min(b + chunk, n));
        return;
    }
    {
        std::lock_guard<std::mutex> lk(mutex_);
        job_ = &fn;
        job_n_ = n;
        job_chunk_ = chunk;
        next_chunk_.store(0);
        pending_workers_ = static_cast<int>(workers_.size());
        ++generation_;
    }
    cv_start_.notify_all();
    run_chunks();
    std::unique_lock<std::mutex> lk(mutex_);
    cv_done_.wait(lk, [&] { return pending_workers_ == 0; });
    job_ = nullptr;
}

double ThreadPool::parallel_reduce(long n, long chunk, const std::function<double(long, long)>& fn) {
    if (n <= 0) return 0.0;
    chunk = std::max<long>(1, chunk);
    const long n_chunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(static_cast<size_t>(n_chunks), 0.0);
    parallel_for(n, chunk, [&](long b, long e) {
        partial[static_cast<size_t>(b / chunk)] = fn(b, e);
    });
    double s = 0.0;
    for (double v : partial) s += v;  // chunk order, independent of thread count
    return s;
}

} // namespace vfpns
