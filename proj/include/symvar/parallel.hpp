#pragma once

// Deterministic data parallelism: work is cut into fixed-size blocks whose
// boundaries depend only on the problem, never on the thread count; block
// results are combined in index order. Same input -> same bits, 1 or N threads.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace symvar {

inline unsigned& thread_count_ref() {
    static unsigned n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

inline unsigned thread_count() { return thread_count_ref(); }

inline void set_thread_count(unsigned n) {
    thread_count_ref() = n == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n;
}

// per_block(lo, hi) -> R over [lo, hi); results folded left-to-right into init.
template <class R, class PerBlock, class Fold>
R blocked_reduce(std::uint64_t begin, std::uint64_t end, std::uint64_t block_size,
                 R init, PerBlock per_block, Fold fold) {
    if (begin >= end) return init;
    const std::uint64_t nblocks = (end - begin + block_size - 1) / block_size;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(thread_count(), nblocks));

    std::vector<R> results(static_cast<std::size_t>(nblocks));
    auto run_block = [&](std::uint64_t bi) {
        std::uint64_t lo = begin + bi * block_size;
        std::uint64_t hi = std::min(end, lo + block_size);
        results[static_cast<std::size_t>(bi)] = per_block(lo, hi);
    };

    if (workers <= 1) {
        for (std::uint64_t bi = 0; bi < nblocks; ++bi) run_block(bi);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t bi = next.fetch_add(1);
                    if (bi >= nblocks) return;
                    run_block(bi);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    R acc = std::move(init);
    for (auto& r : results) acc = fold(std::move(acc), std::move(r));
    return acc;
}

} // namespace symvar
