#include "plateau/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plateau {

int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("PLATEAU_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
      if (cap < 1) n = 1;
    } catch (const std::exception&) {
      // Unparseable cap: keep the OpenMP default.
    }
  }
  return n;
}

}  // namespace plateau
