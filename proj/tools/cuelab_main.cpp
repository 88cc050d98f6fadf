#include <cstdlib>

#include "cuelab/cli.hpp"

int main(int argc, char** argv) {
  // BLAS-internal threading off by default (replicate-level parallelism is
  // handled by the library); an explicit user setting wins (overwrite = 0).
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  setenv("OMP_NUM_THREADS", "1", 0);
  return cuelab::cli_main(argc, argv);
}
