#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace octowind {

/// Worker count: the explicit request if given, else OCTOWIND_THREADS, else
/// the machine's hardware concurrency (at least 1).
unsigned resolve_workers(std::optional<unsigned> requested = std::nullopt);

/// Evaluates f(i) for i in [0, n) on a pool of workers and returns the
/// results in index order. Each result depends only on its index, so the
/// output is identical for any worker count. If any call throws, the
/// exception from the lowest failing index is rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t n, F&& f, unsigned workers = 0)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    constexpr std::size_t kChunk = 16;

    auto work = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= n || failed.load(std::memory_order_relaxed)) return;
            const std::size_t end = std::min(n, begin + kChunk);
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    slots[i].emplace(f(i));
                } catch (...) {
                    errors[i] = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        }
    };

    if (workers == 0) workers = resolve_workers();
    const auto n_threads = static_cast<unsigned>(
        std::min<std::size_t>(workers, (n + kChunk - 1) / kChunk));
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads - 1);
        for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(work);
        work();
    }

    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace octowind
