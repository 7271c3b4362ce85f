#include "cyent/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyent {

int configured_threads() {
#ifdef _OPENMP
  if (const char *env = std::getenv("CY_ENTROPY_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0)
        return n;
    } catch (const std::exception &) {
      // fall through to the default
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace cyent
