#include <cstdlib>
#include <string>

#include <omp.h>

#include "kernel_impl.hpp"

namespace sscnet::kernels {

namespace {

// Below this many columns the fork/join overhead dominates.
constexpr Index kMinParallelColumns = 32;

struct OmpLoop {
  template <class Body>
  void operator()(Index n, Body&& body) const {
#pragma omp parallel for schedule(dynamic, 8) if (n >= kMinParallelColumns)
    for (Index j = 0; j < n; ++j) body(j);
  }
};

}  // namespace

namespace omp {
SSCNET_DEFINE_KERNELS(OmpLoop)
}  // namespace omp

int max_threads() { return omp_get_max_threads(); }

int apply_thread_env() {
  if (const char* env = std::getenv("SSCNET_NUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // Unparseable values leave the OpenMP default in place.
    }
  }
  return omp_get_max_threads();
}

}  // namespace sscnet::kernels
