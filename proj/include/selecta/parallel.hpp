#pragma once

#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace selecta {

/// Worker count OpenMP regions will use (1 when built without OpenMP).
int max_threads() noexcept;

/// Caps worker parallelism for subsequent parallel regions.
void set_thread_count(int threads) noexcept;

/// Applies SELECTA_THREADS if set to a positive integer. Returns the
/// resulting worker count.
int configure_threads_from_env() noexcept;

/// Runs fn(i) for i in [begin, end). Iterations may execute concurrently and
/// in any order, so fn must only write to slots owned by i. The first
/// exception thrown by any iteration is rethrown on the calling thread after
/// the loop finishes.
template <class Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::int64_t i = begin; i < end; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// As parallel_for with a static schedule, for uniform cheap iterations.
template <class Fn>
void parallel_for_static(std::int64_t begin, std::int64_t end, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = begin; i < end; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace selecta
