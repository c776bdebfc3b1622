#pragma once

#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace rationeval {

// Runs compute(i) for i in [0, n) on up to `workers` threads and hands each
// result to consume(i, result) on the calling thread, strictly in index
// order. Output ordering is therefore independent of the worker count, which
// keeps floating-point reductions and file writes reproducible.
template <typename Result, typename Compute, typename Consume>
void ordered_parallel_map(std::size_t n, int workers, Compute compute, Consume consume) {
    if (n == 0) return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) consume(i, compute(i));
        return;
    }

    struct Slot {
        std::optional<Result> result;
        std::exception_ptr error;
        bool done = false;
    };
    std::vector<Slot> slots(n);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> cancelled{false};

    auto worker_loop = [&] {
        for (;;) {
            std::size_t i = next_task.fetch_add(1);
            if (i >= n || cancelled.load()) return;
            Slot slot;
            try {
                slot.result = compute(i);
            } catch (...) {
                slot.error = std::current_exception();
            }
            slot.done = true;
            {
                std::lock_guard<std::mutex> lock(mu);
                slots[i] = std::move(slot);
            }
            cv.notify_all();
        }
    };

    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker_loop);

    std::exception_ptr first_error;
    for (std::size_t i = 0; i < n; ++i) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return slots[i].done; });
        Slot slot = std::move(slots[i]);
        lock.unlock();
        if (slot.error) {
            first_error = slot.error;
            cancelled.store(true);
            break;
        }
        consume(i, std::move(*slot.result));
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rationeval
