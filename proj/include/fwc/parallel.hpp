#ifndef FWC_PARALLEL_HPP
#define FWC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fwc {

inline unsigned default_threads() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(begin, end, worker) over `workers` contiguous blocks of [0, count).
// The first exception thrown by any worker is rethrown on the caller.
template <class Fn>
void parallel_blocks(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count)));
    if (workers == 1) {
        fn(std::uint64_t{0}, count, 0u);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = count / workers, extra = count % workers;
    std::uint64_t begin = 0;
    for (unsigned k = 0; k < workers; ++k) {
        const std::uint64_t end = begin + chunk + (k < extra ? 1 : 0);
        pool.emplace_back([&, begin, end, k] {
            try {
                fn(begin, end, k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fwc

#endif  // FWC_PARALLEL_HPP
