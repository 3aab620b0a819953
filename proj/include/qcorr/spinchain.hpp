// spinchain.hpp — Exact diagonalization of the periodic XXZ chain, two-site
// reduced density matrices, Hellmann-Feynman consistency checks, and
// anisotropy sweeps.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

#include <vector>

namespace qcorr::spinchain {

using linalg::ComplexMatrix;
using linalg::SparseReal;
using states::CorrelationVector;

struct XXZParameters {
    int length = 8;      // even, 2 <= L <= 16 (sweeps use L >= 4)
    double delta = 0.0;  // anisotropy; J = 1, periodic boundary

    void validate() const;
};

// H = -(1/2) sum_i (sx_i sx_{i+1} + sy_i sy_{i+1} + delta sz_i sz_{i+1}),
// periodic wrap. At L = 2 the wrap double-counts the single bond; that factor
// of two is kept as-is (sweeps use L >= 4).
SparseReal build_hamiltonian(const XXZParameters& p);

// Total-magnetization operator sum_i sz_i (for symmetry checks).
SparseReal total_sz(int length);

struct GroundState {
    double energy = 0.0;
    std::vector<std::vector<double>> vectors; // orthonormal degenerate set
    double residual = 0.0;
    int degeneracy() const { return static_cast<int>(vectors.size()); }
};

// Lowest eigenpair via Lanczos with deflation; eigenvalues within degen_tol of
// the bottom are collected and the ground space is returned as a maximally
// mixed ensemble over them. Throws std::runtime_error on non-convergence.
GroundState ground_state(const SparseReal& h, const XXZParameters& p,
                         double degen_tol = 1e-10);

// Dense cross-check (Jacobi on the full matrix), L <= 8 only.
GroundState ground_state_dense(const SparseReal& h, const XXZParameters& p,
                               double degen_tol = 1e-10);

// Two-site reduced density matrix on the bond (site, site+1 mod L), averaged
// over the degenerate ensemble.
ComplexMatrix two_site_rdm(const GroundState& gs, int site, int length);

// Checks the U(1)/zero-magnetization sparsity pattern (X-state, a = d,
// b1 = b2, real z) and maps the matrix to c1 = c2 = 2z, c3 = 4a - 1.
CorrelationVector correlation_vector(const ComplexMatrix& rdm);

// Magnetization density <sz> of the ensemble.
double magnetization_density(const GroundState& gs, int length);

struct HfResult {
    double deps_ddelta = 0.0;
    double residual1 = 0.0; // | delta de/dD - e - (Gxx+Gyy)/2 |
    double residual2 = 0.0; // | Gzz + 2 de/dD |
};

// Central-difference Hellmann-Feynman check with step h. Throws when delta
// sits within h of the level crossing at delta = 1.
HfResult hellmann_feynman_check(const XXZParameters& p, double h = 1e-3);

struct SweepRecord {
    double delta = 0.0;
    int length = 0;
    double energy_density = 0.0;
    double de_ddelta = 0.0; // NaN inside the guard band around delta = 1
    double gxx = 0.0, gyy = 0.0, gzz = 0.0;
    double sz = 0.0;
    CorrelationVector c;
    measures::MeasureSet measures;
    double hf_res1 = 0.0, hf_res2 = 0.0; // NaN inside the guard band
};

SweepRecord sweep_point(double delta, int length, double h = 1e-3);

// Independent jobs per delta; parallelized, deterministic output order.
std::vector<SweepRecord> sweep(double delta_min, double delta_max, double step, int length,
                               double h = 1e-3);

} // namespace qcorr::spinchain
