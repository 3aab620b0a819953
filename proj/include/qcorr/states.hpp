// states.hpp — Bell-diagonal and classical-quantum two-qubit states:
// construction, physicality checks, and seeded sampling.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/rng.hpp"

#include <array>

namespace qcorr::states {

using linalg::ComplexMatrix;

// Correlation vector (c1, c2, c3) of a Bell-diagonal state.
struct CorrelationVector {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;

    double norm_sq() const { return c1 * c1 + c2 * c2 + c3 * c3; }
    std::array<double, 3> alpha() const { return {c1 * c1, c2 * c2, c3 * c3}; }
    std::array<double, 3> beta() const {
        return {c2 * c2 * c3 * c3, c1 * c1 * c3 * c3, c1 * c1 * c2 * c2};
    }
    double component(int axis) const; // axis in {1,2,3}
};

// Sorted absolute values: c_plus >= c_zero >= c_minus >= 0.
struct CorrelationTriple {
    double c_plus = 0.0, c_zero = 0.0, c_minus = 0.0;
};

// rho_c = sum_k p_k Pi_k (x) rho_k^b, with Pi± = (I ± n.sigma)/2 on side a and
// qubit Bloch states rho_k^b = (I + r_k.sigma)/2 on side b.
struct ClassicalQuantumState {
    double p1 = 1.0; // p2 = 1 - p1
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    std::array<double, 3> bloch1{0.0, 0.0, 0.0};
    std::array<double, 3> bloch2{0.0, 0.0, 0.0};

    void validate() const; // throws on invariant violation
};

// Bell-diagonal classical state: l = l * e_axis on one classical axis.
struct BellDiagonalClassicalState {
    int axis = 1; // 1, 2 or 3
    double l = 0.0;
};

// Squared measurement direction u = (n1^2, n2^2, n3^2) on the simplex.
struct MeasurementDirection {
    std::array<double, 3> u{1.0, 0.0, 0.0};

    void validate() const;
};

// Eigenvalues lambda_ij of the Bell-diagonal state, ordered (00, 01, 10, 11).
std::array<double, 4> bd_eigenvalues(const CorrelationVector& c);

// True iff c lies inside the Bell-diagonal tetrahedron (min lambda >= -1e-12).
bool is_physical(const CorrelationVector& c);

void require_physical(const CorrelationVector& c); // throws when unphysical

// (1/4)[I(x)I + sum_i c_i sigma_i (x) sigma_i]
ComplexMatrix bd_density_matrix(const CorrelationVector& c);

// Inverse of bd_density_matrix: c_i = tr[rho (sigma_i (x) sigma_i)]. Rejects
// inputs whose marginals are not maximally mixed within 1e-8.
CorrelationVector from_density_matrix(const ComplexMatrix& rho);

ComplexMatrix cq_density_matrix(const ClassicalQuantumState& s);

ComplexMatrix bd_classical_density_matrix(const BellDiagonalClassicalState& s);

CorrelationTriple correlation_stats(const CorrelationVector& c);

// Uniform over the tetrahedron by rejection from the cube [-1,1]^3.
CorrelationVector sample_bd_uniform(RngStream& rng);

// p1 uniform, axis uniform on the sphere, Bloch vectors uniform in the ball.
ClassicalQuantumState sample_classical(RngStream& rng);

// Validates a density matrix: Hermitian, unit trace, PSD (within tolerances).
void require_density_matrix(const ComplexMatrix& rho, double tol = 1e-10);

} // namespace qcorr::states
