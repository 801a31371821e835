#include "chaoscrypt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace chaoscrypt {

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHAOSCRYPT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // unparsable: fall through to the hardware default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ChunkedFor::ChunkedFor(std::size_t total, std::size_t chunk_size)
    : total_(total),
      chunk_size_(std::max<std::size_t>(1, chunk_size)),
      chunks_((total + chunk_size_ - 1) / chunk_size_) {}

void ChunkedFor::run(unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                     const ProgressFn& progress) const {
    if (chunks_ == 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks_));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex mu;
    std::size_t done = 0;

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t chunk = next.fetch_add(1, std::memory_order_relaxed);
            if (chunk >= chunks_) return;
            const std::size_t begin = chunk * chunk_size_;
            const std::size_t end = std::min(total_, begin + chunk_size_);
            try {
                body(chunk, begin, end);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first_error) first_error = std::current_exception();
                failed = true;
                return;
            }
            if (progress) {
                std::lock_guard lock(mu);
                done += end - begin;
                progress(done, total_);
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace chaoscrypt
