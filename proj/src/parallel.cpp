#include "selecta/parallel.hpp"

#include <cstdlib>
#include <string>

namespace selecta {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int threads) noexcept {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int configure_threads_from_env() noexcept {
  if (const char* env = std::getenv("SELECTA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) set_thread_count(static_cast<int>(v));
  }
  return max_threads();
}

}  // namespace selecta
