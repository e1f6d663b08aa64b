// Minimal work-sharing loop used by the per-link and per-element stages.

#ifndef IHORBIT_PARALLEL_HPP
#define IHORBIT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ihorbit::detail
{

// Runs body(0..count-1) on up to `jobs` threads.  The first exception thrown
// by any task is rethrown after the join.
template <class Body>
void parallelFor(int jobs, std::size_t count, Body&& body)
{
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers == 1)
    {
        for (std::size_t t = 0; t < count; ++t)
            body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < count; t = next++)
            {
                try
                {
                    body(t);
                }
                catch (...)
                {
                    std::lock_guard lock(m);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace ihorbit::detail

#endif
