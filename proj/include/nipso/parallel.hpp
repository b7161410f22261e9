#ifndef NIPSO_PARALLEL_HPP
#define NIPSO_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace nipso {

/// Run fn(block_index) for every block on a small thread pool. Work is
/// partitioned into a fixed number of blocks independent of the thread
/// count, so any state keyed by block index is reproducible no matter how
/// many workers execute the blocks.
inline void parallel_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& fn) {
    const std::size_t hw = std::thread::hardware_concurrency();
    const std::size_t n_threads = std::min(n_blocks, hw > 0 ? hw : 1);
    if (n_threads <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t b = t; b < n_blocks; b += n_threads) fn(b);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace nipso

#endif  // NIPSO_PARALLEL_HPP
