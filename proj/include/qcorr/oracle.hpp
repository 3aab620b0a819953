// oracle.hpp — Brute-force sampling oracles: trace-norm minimization over
// randomly drawn classical-quantum states (the delta-statistic protocol with
// its histogram and power-law fit) and a Hilbert-Schmidt sampling oracle.
//
// Per-state work items run on independent RNG streams derived from the master
// seed, so results are deterministic and independent of the thread count.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qcorr::oracle {

using linalg::ComplexMatrix;
using states::CorrelationVector;

struct DeltaStats {
    std::vector<double> minima;    // per-state sampled minima at the final Nc
    std::vector<double> deltas;    // minima - c0
    double mean_delta = 0.0;
    std::vector<double> bin_edges; // histogram over [0, max delta]
    std::vector<long> counts;
    // power-law fit mean_delta = A * Nc^b over the decade checkpoints
    std::vector<long> checkpoints;
    std::vector<double> checkpoint_means;
    double fit_amplitude = 0.0;
    double fit_exponent = 0.0;
};

// Minimum trace distance from rho (4x4) to nc sampled classical-quantum
// states. Nested by construction: the sample sequence is a prefix stream.
double d1_sample_min(const ComplexMatrix& rho, long nc, RngStream& rng);

// Same, but records the running minimum at each checkpoint (ascending counts).
std::vector<double> d1_sample_min_checkpoints(const ComplexMatrix& rho,
                                              const std::vector<long>& checkpoints,
                                              RngStream& rng);

// delta = d1_sample_min(bd(c), nc) - c0; >= -1e-9.
double delta_statistic(const CorrelationVector& c, long nc, RngStream& rng);

// delta for n_states uniform tetrahedron samples against nc classical states
// each, with histogram, mean, and the power-law fit over decade checkpoints.
DeltaStats delta_histogram(int n_states, long nc, int bins, std::uint64_t seed,
                           bool parallel = true);

// Least-squares line in log10-log10 coordinates: returns (A, b) with
// mean = A * nc^b. Throws on fewer than 3 points or nonpositive values.
std::pair<double, double> powerlaw_fit(const std::vector<std::pair<double, double>>& points);

// Minimum squared Hilbert-Schmidt distance from rho (2*db x 2*db) to nc
// sampled classical-quantum states; db in {2, 4}. For db = 4 the b-side
// states are normalized random PSD matrices.
double d2_sample_min(const ComplexMatrix& rho, std::size_t db, long nc, RngStream& rng);

// Sampled classical-quantum state on a 2 x db system (db in {2, 4}).
ComplexMatrix sample_classical_matrix(std::size_t db, RngStream& rng);

// Trace-norm analogue of d2_sample_min on the 2 x db system.
double d1_sample_min_extended(const ComplexMatrix& rho, std::size_t db, long nc,
                              RngStream& rng);

} // namespace qcorr::oracle
