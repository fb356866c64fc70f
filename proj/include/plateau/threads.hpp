#pragma once

namespace plateau {

// Number of workers for parallel kernels: the OpenMP default capped by the
// PLATEAU_THREADS environment variable (values < 1 are treated as 1).
// Returns 1 when OpenMP is not compiled in.
int worker_count();

}  // namespace plateau
