#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace cubesense {

// Worker count: explicit override > THREADS env var > hardware concurrency.
int worker_count();
void set_worker_count(int workers);  // 0 restores auto detection

// Splits [0, total) into fixed-size chunks and runs fn(chunk_index, begin, end)
// on a pool of workers. Chunk boundaries depend only on (total, chunk_size),
// so per-chunk results merged in chunk order are identical for any worker
// count.
template <class Fn>
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size, Fn&& fn) {
    if (total == 0) return;
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    const int workers = std::min<std::uint64_t>(worker_count(), chunks);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c)
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace cubesense
