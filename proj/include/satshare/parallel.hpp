#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace satshare {

// Splits [0, total) into fixed-size chunks and hands chunk indices to a pool
// of workers. Chunk boundaries never depend on the worker count, so per-chunk
// partial results can be reduced in index order for bit-identical output.
template <class Fn>
void run_chunked(long total, long chunk_size, int threads, Fn&& fn) {
    if (total <= 0) return;
    const long n_chunks = (total + chunk_size - 1) / chunk_size;
    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (static_cast<long>(n_threads) > n_chunks) n_threads = static_cast<int>(n_chunks);

    if (n_threads == 1) {
        for (long c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return;
    }

    std::atomic<long> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= n_chunks || failed.load()) return;
            try {
                fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace satshare
