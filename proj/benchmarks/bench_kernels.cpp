// Compares the OpenMP kernels against their serial reference paths. The two
// paths execute identical floating-point work, so outputs must match bitwise;
// any difference is reported as a failure alongside the timings.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include <omp.h>

#include "bellbound/family7.hpp"
#include "bellbound/pauli_bell.hpp"
#include "bellbound/state.hpp"

using namespace bellbound;

namespace {

PureState random_state(int n, std::uint64_t seed) {
  std::mt19937_64 eng = seeded_engine(seed, 0);
  std::vector<cdouble> amps(std::size_t{1} << n);
  double norm_sq = 0.0;
  for (auto& a : amps) {
    // Box-Muller pairs keep the draw deterministic across platforms.
    double u1 = uniform01(eng), u2 = uniform01(eng);
    double u3 = uniform01(eng), u4 = uniform01(eng);
    double r1 = std::sqrt(-2.0 * std::log(u1 + 1e-300));
    double r2 = std::sqrt(-2.0 * std::log(u3 + 1e-300));
    a = {r1 * std::cos(6.283185307179586 * u2),
         r2 * std::cos(6.283185307179586 * u4)};
    norm_sq += std::norm(a);
  }
  double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  return PureState(n, std::move(amps));
}

struct Row {
  const char* name;
  double serial_s;
  double parallel_s;
  bool identical;
};

void print_row(const Row& row) {
  std::printf("%-24s %10.4f s %10.4f s %8.2fx   %s\n", row.name, row.serial_s,
              row.parallel_s,
              row.parallel_s > 0 ? row.serial_s / row.parallel_s : 0.0,
              row.identical ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int n_rmatrix = 8;
  int n_seesaw = 6;
  int restarts = 32;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--n-rmatrix")) n_rmatrix = std::atoi(argv[i + 1]);
    if (!std::strcmp(argv[i], "--n-seesaw")) n_seesaw = std::atoi(argv[i + 1]);
    if (!std::strcmp(argv[i], "--restarts")) restarts = std::atoi(argv[i + 1]);
  }

  std::printf("threads: %d\n", thread_cap());
  std::printf("%-24s %12s %12s %9s   %s\n", "kernel", "serial", "parallel",
              "speedup", "check");
  bool ok = true;

  {
    PureState state = random_state(n_rmatrix, 42);
    double t0 = omp_get_wtime();
    RMatrix serial = r_matrix(state, Exec::serial);
    double t1 = omp_get_wtime();
    RMatrix parallel = r_matrix(state, Exec::parallel);
    double t2 = omp_get_wtime();
    bool same = serial.entries == parallel.entries;
    ok = ok && same;
    char name[64];
    std::snprintf(name, sizeof(name), "r_matrix n=%d", n_rmatrix);
    print_row({name, t1 - t0, t2 - t1, same});
  }

  {
    PureState state = random_state(n_seesaw, 43);
    double t0 = omp_get_wtime();
    GammaSandwich serial = maximize_bell(state, restarts, 7, Exec::serial);
    double t1 = omp_get_wtime();
    GammaSandwich parallel = maximize_bell(state, restarts, 7, Exec::parallel);
    double t2 = omp_get_wtime();
    bool same = serial.lower == parallel.lower &&
                serial.settings.a == parallel.settings.a &&
                serial.settings.aPrime == parallel.settings.aPrime;
    ok = ok && same;
    char name[64];
    std::snprintf(name, sizeof(name), "maximize_bell n=%d r=%d", n_seesaw,
                  restarts);
    print_row({name, t1 - t0, t2 - t1, same});
  }

  {
    double t0 = omp_get_wtime();
    auto serial = figure_sweep(1, Exec::serial);
    double t1 = omp_get_wtime();
    auto parallel = figure_sweep(1, Exec::parallel);
    double t2 = omp_get_wtime();
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i) {
      same = serial[i].bound == parallel[i].bound &&
             serial[i].inGamut == parallel[i].inGamut;
    }
    ok = ok && same;
    print_row({"figure_sweep fig=1", t1 - t0, t2 - t1, same});
  }

  {
    PureState state = random_state(10, 44);
    double t0 = omp_get_wtime();
    auto serial = flat_spectrum_report(state, Exec::serial);
    double t1 = omp_get_wtime();
    auto parallel = flat_spectrum_report(state, Exec::parallel);
    double t2 = omp_get_wtime();
    bool same = serial.reports.size() == parallel.reports.size();
    for (std::size_t i = 0; same && i < serial.reports.size(); ++i) {
      same = serial.reports[i].eigenvalues == parallel.reports[i].eigenvalues;
    }
    ok = ok && same;
    print_row({"flat_spectrum n=10", t1 - t0, t2 - t1, same});
  }

  return ok ? 0 : 1;
}
