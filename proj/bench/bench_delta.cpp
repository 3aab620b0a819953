// bench_delta — serial vs OpenMP-parallel delta-statistic protocol.
//
// Both paths derive per-state RNG streams from the master seed, so they must
// agree bitwise; the benchmark reports wall times and verifies equality.

#include "qcorr/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
    int n_states = 200;
    long nc = 2000;
    std::uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--n-states")) n_states = std::atoi(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--nc")) nc = std::atol(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--seed")) seed = std::strtoull(argv[i + 1], nullptr, 10);
    }

#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif
    std::printf("protocol: %d states x %ld classical samples, seed %llu\n", n_states, nc,
                static_cast<unsigned long long>(seed));

    using clock = std::chrono::steady_clock;

    const auto t0 = clock::now();
    const auto serial = qcorr::oracle::delta_histogram(n_states, nc, 40, seed, false);
    const auto t1 = clock::now();
    const auto parallel = qcorr::oracle::delta_histogram(n_states, nc, 40, seed, true);
    const auto t2 = clock::now();

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();

    bool identical = serial.deltas.size() == parallel.deltas.size();
    for (std::size_t i = 0; identical && i < serial.deltas.size(); ++i)
        identical = serial.deltas[i] == parallel.deltas[i];

    std::printf("serial:   %8.3f s  (mean delta %.6f)\n", ts, serial.mean_delta);
    std::printf("parallel: %8.3f s  (mean delta %.6f)\n", tp, parallel.mean_delta);
    std::printf("speedup:  %8.2fx\n", tp > 0 ? ts / tp : 0.0);
    std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
