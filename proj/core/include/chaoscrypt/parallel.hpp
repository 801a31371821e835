#pragma once

#include <cstddef>
#include <functional>

namespace chaoscrypt {

/// Resolves a requested worker count: a nonzero request wins, then the
/// CHAOSCRYPT_THREADS environment variable, then hardware concurrency.
/// Never returns 0.
unsigned resolve_thread_count(unsigned requested = 0);

/// Called with (items done, items total). Invoked from worker threads, but
/// never concurrently.
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// Splits [0, total) into contiguous chunks handed out to `threads` workers.
/// `body(chunk_index, begin, end)` may run concurrently for distinct chunks;
/// `chunk_count(total)` tells callers how many result slots to allocate so
/// merged output can be put back in chunk order.
class ChunkedFor {
public:
    explicit ChunkedFor(std::size_t total, std::size_t chunk_size = 256);

    std::size_t chunk_count() const noexcept { return chunks_; }

    void run(unsigned threads,
             const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
             const ProgressFn& progress = {}) const;

private:
    std::size_t total_;
    std::size_t chunk_size_;
    std::size_t chunks_;
};

}  // namespace chaoscrypt
