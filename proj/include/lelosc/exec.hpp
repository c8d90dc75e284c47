#pragma once

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lelosc {

/// Execution policy for grid-scan kernels. Every kernel has a serial
/// reference implementation; the parallel variant writes each grid index
/// independently and produces bitwise-identical results at any thread count.
enum class Exec { serial, parallel };

/// Thread cap for Exec::parallel, from the LELOSC_THREADS environment
/// variable; defaults to 1, clamped to [1, 256].
[[nodiscard]] int thread_count();

/// Runs fn(i) for i in [0, n). Exec::parallel distributes indices statically
/// across threads; the first exception thrown by any index is rethrown after
/// the loop completes (exceptions must not escape an OpenMP region).
template <typename Fn>
void indexed_for(long long n, Exec exec, Fn&& fn) {
    if (exec == Exec::parallel) {
        std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
        for (long long i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(lelosc_indexed_for_err)
#endif
                {
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (long long i = 0; i < n; ++i) fn(i);
    }
}

} // namespace lelosc
