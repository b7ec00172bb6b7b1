#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specnorm::sweep {

/// True when OpenMP is compiled in and SPECNORM_SERIAL is not set.
inline bool parallel_enabled() {
#ifdef _OPENMP
    const char* s = std::getenv("SPECNORM_SERIAL");
    return s == nullptr || s[0] == '\0' || s[0] == '0';
#else
    return false;
#endif
}

/// Serial reference path: evaluates f(0..count-1) in index order.  Kept as
/// the comparison baseline for the parallel kernel; results must match it
/// bit for bit.
template <class R, class F>
std::vector<R> map_indexed_serial(int count, F&& f) {
    std::vector<R> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(f(i));
    return out;
}

/// OpenMP kernel: cells run concurrently, results land in index order, the
/// first exception wins and is rethrown after the loop drains.
template <class R, class F>
std::vector<R> map_indexed_parallel(int count, F&& f) {
    std::vector<std::optional<R>> slots(static_cast<size_t>(count));
    std::exception_ptr error = nullptr;
    std::atomic<bool> failed{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            slots[static_cast<size_t>(i)] = f(i);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(specnorm_sweep_error)
#endif
            {
                if (!error) error = std::current_exception();
            }
            failed.store(true, std::memory_order_relaxed);
        }
    }

    if (error) std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(static_cast<size_t>(count));
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <class R, class F>
std::vector<R> map_indexed(int count, F&& f, bool parallel) {
    if (parallel && parallel_enabled()) return map_indexed_parallel<R>(count, std::forward<F>(f));
    return map_indexed_serial<R>(count, std::forward<F>(f));
}

}  // namespace specnorm::sweep
