#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace smoothlab {

// Runs fn(block) for block in [0, blocks) on up to `threads` workers. Blocks
// are claimed dynamically, so callers must write results into per-block slots
// and combine them in block order to stay independent of the worker count.
template <typename Fn>
void for_each_block(std::size_t blocks, unsigned threads, Fn&& fn) {
    if (threads <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t b = next++; b < blocks; b = next++) fn(b);
            } catch (...) {
                errors[w] = std::current_exception();
                next = blocks;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace smoothlab
