// aircov: ground-to-air coverage planning for terrestrial cellular networks
//
// SPDX-License-Identifier: MIT
// Copyright (c) 2026 aircov contributors

#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace aircov {

/// Run body(chunk_index, begin, end) over [0, n) split into contiguous
/// chunks, one per worker. Chunk boundaries depend only on (n, threads),
/// never on scheduling, so any per-chunk partial results the caller merges
/// in chunk order are reproducible for a fixed thread count; integer-count
/// reductions are reproducible for ANY thread count. If workers throw, the
/// lowest-chunk exception is rethrown after all workers finish.
template <class Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
    if (n == 0) return;
    const std::size_t workers =
        threads <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (workers == 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    const std::size_t base = n / workers, extra = n % workers;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t begin = 0;
    for (std::size_t c = 0; c < workers; ++c) {
        const std::size_t len = base + (c < extra ? 1 : 0);
        const std::size_t end = begin + len;
        pool.emplace_back([&body, &errors, c, begin, end] {
            try {
                body(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace aircov
