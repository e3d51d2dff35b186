#pragma once

namespace bellbound {

// Every parallel kernel keeps a serial path selected by this switch. The two
// paths perform identical floating-point operations in identical order, so
// results are bitwise equal; tests and the benchmark target rely on that.
enum class Exec { serial, parallel };

// Thread cap for OpenMP regions: min(omp_get_max_threads(), BELLBOUND_THREADS).
// Read once on first use.
int thread_cap();

}  // namespace bellbound
