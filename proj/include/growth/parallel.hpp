#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace growth::par {

/// Execution mode for the data-parallel kernels. The serial mode is the
/// reference implementation; the OpenMP mode must produce bitwise-identical
/// results for any thread count (kernels only ever fill disjoint slots of a
/// buffer, reductions happen serially afterwards).
enum class Mode { serial, openmp };

inline std::atomic<Mode>& mode_flag() {
#ifdef _OPENMP
    static std::atomic<Mode> m{Mode::openmp};
#else
    static std::atomic<Mode> m{Mode::serial};
#endif
    return m;
}

inline Mode mode() { return mode_flag().load(std::memory_order_relaxed); }
inline void set_mode(Mode m) { mode_flag().store(m, std::memory_order_relaxed); }

/// Scoped mode switch, used by tests and the benchmark.
class ModeGuard {
public:
    explicit ModeGuard(Mode m) : saved_(mode()) { set_mode(m); }
    ~ModeGuard() { set_mode(saved_); }
    ModeGuard(const ModeGuard&) = delete;
    ModeGuard& operator=(const ModeGuard&) = delete;

private:
    Mode saved_;
};

/// Iteration grain: fine loops (big fills of cheap elements) use static
/// chunks, coarse loops (a handful of expensive samples) use dynamic
/// scheduling for balance. Either way each iteration writes only its own
/// slot, so the results do not depend on the schedule.
enum class Grain { fine, coarse };

/// Runs body(i) for i in [0, n). In OpenMP mode iterations are spread over
/// the team; the body must only touch state owned by iteration i. Exceptions
/// are captured and rethrown on the calling thread (first one wins). Inside
/// an existing parallel region (or with a team of one) the loop stays serial:
/// the outer level already owns the cores, and region churn costs more than
/// it buys.
template <class F>
void for_index(std::ptrdiff_t n, F&& body, Grain grain = Grain::fine) {
    if (n <= 0) return;
#ifdef _OPENMP
    if (mode() == Mode::openmp && omp_get_max_threads() > 1 && !omp_in_parallel()) {
        std::exception_ptr err;
        std::mutex err_mutex;
        if (grain == Grain::fine) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        } else {
#pragma omp parallel for schedule(dynamic, 1)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)grain;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

/// Fixed-shape pairwise summation tree. The tree depends only on n, never on
/// the execution mode or thread count, so sums are bit-reproducible.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v.data(), v.size()));
}

} // namespace growth::par
