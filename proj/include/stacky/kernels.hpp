// Search kernels used by the coherence checkers.
//
// Every checker reduces to "find the first index in [0, n) whose tuple
// block violates a law". The serial loop is the reference; the OpenMP
// version must return the same index, so witnesses do not depend on the
// thread count.
#pragma once

#include <atomic>
#include <cstddef>

namespace stacky {

enum class Exec { serial, parallel };

namespace kernel {

// Below this many blocks the parallel path is not worth the fork.
inline constexpr std::size_t kParallelThreshold = 64;

template <class Fails>
std::size_t first_failure_serial(std::size_t n, Fails&& fails) {
    for (std::size_t i = 0; i < n; ++i)
        if (fails(i)) return i;
    return n;
}

template <class Fails>
std::size_t first_failure_parallel(std::size_t n, Fails&& fails) {
#ifdef STACKY_HAVE_OPENMP
    std::atomic<std::size_t> best{n};
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (idx >= best.load(std::memory_order_relaxed)) continue;
        if (fails(idx)) {
            std::size_t cur = best.load(std::memory_order_relaxed);
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
            }
        }
    }
    return best.load();
#else
    return first_failure_serial(n, fails);
#endif
}

template <class Fails>
std::size_t first_failure(Exec exec, std::size_t n, Fails&& fails) {
    if (exec == Exec::serial || n < kParallelThreshold) return first_failure_serial(n, fails);
    return first_failure_parallel(n, fails);
}

bool openmp_enabled();
int max_threads();

}  // namespace kernel
}  // namespace stacky
