#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zkai {

// Every data-parallel kernel takes an ExecPolicy. `serial` is the reference
// path; tests assert the two produce bit-identical results (all kernel
// reductions are exact field or per-slot writes, so they must).
enum class ExecPolicy {
    serial,
    parallel,
};

// Index-space parallel loop. `fn(i)` must only write state owned by
// iteration i.
template <typename Fn>
void parallel_for(ExecPolicy policy, std::size_t n, Fn&& fn) {
#ifdef _OPENMP
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < (long long)n; i++) {
            fn((std::size_t)i);
        }
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < n; i++) fn(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace zkai
