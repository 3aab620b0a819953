// channels.hpp — Local operations on the unmeasured subsystem: ancilla
// attachment, Pauli channels, the p-norm scaling law, and trace-norm
// contractivity checks.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

#include <array>
#include <cstdint>

namespace qcorr::channels {

using linalg::ComplexMatrix;
using states::CorrelationVector;

// Qubit ancilla sigma = (I + r.sigma)/2.
struct AncillaState {
    std::array<double, 3> bloch{0.0, 0.0, 0.0};

    double purity() const {
        const double r2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
        return 0.5 * (1.0 + r2);
    }
    ComplexMatrix matrix() const;
    void validate() const;
};

// Pauli channel with probabilities (q0, qx, qy, qz).
struct PauliChannel {
    double q0 = 1.0, qx = 0.0, qy = 0.0, qz = 0.0;

    void validate() const;
    // attenuation factors (eta_x, eta_y, eta_z) of the Bloch components
    std::array<double, 3> attenuation() const;
};

// rho (x) sigma
ComplexMatrix attach_ancilla(const ComplexMatrix& rho, const AncillaState& sigma);

struct ScalingReport {
    int p = 1;
    double sigma_norm_p_pow = 0.0;    // ||sigma||_p^p
    double dp_value = 0.0;            // D_p of the Bell-diagonal state
    double norm_identity_gap = 0.0;   // | ||X(x)sigma||_p^p - ||X||_p^p ||sigma||_p^p |
    double extended_candidate = 0.0;  // || (rho - rho_c)(x)sigma ||_p^p, BD-optimal rho_c
    double predicted_scaled = 0.0;    // D_p(rho) * ||sigma||_p^p
    double sampled_floor = 0.0;       // sampled minimum on the 2x4 system
    bool norm_identity_ok = false;
    bool bound_ok = false;
    bool floor_ok = false;
};

// Verifies the p-norm scaling law at three levels: the exact norm identity on
// the optimal Bell-diagonal closest state, the achievable upper bound, and a
// sampled statistical floor on the extended 2x4 system.
ScalingReport dp_scaling_check(const CorrelationVector& c, const AncillaState& sigma, int p,
                               long nc_floor = 500, std::uint64_t seed = 1);

// Pauli channel acting on side b: c_i -> eta_i c_i, Bell-diagonal form kept.
CorrelationVector apply_pauli_channel_b(const CorrelationVector& c, const PauliChannel& ch);

struct ContractivityReport {
    double d1_before = 0.0, d1_after = 0.0;
    double dist_before = 0.0, dist_after = 0.0; // matrix-level trace distances
    bool d1_ok = false, contraction_ok = false;
};

ContractivityReport contractivity_check(const CorrelationVector& c, const PauliChannel& ch);

struct WitnessReport {
    double purity_factor = 0.0;     // tr sigma^2
    double dg_base = 0.0;           // D_G of the Bell vertex
    double dg_extended = 0.0;       // predicted D_G with ancilla attached
    double d1_base = 0.0, d1_extended = 0.0;
    bool dg_increases_on_removal = false;
    bool d1_invariant = false;
};

// Worked example: attaching a maximally mixed ancilla to a Bell vertex halves
// D_G, so its reversible removal increases it; D_1 is unchanged.
WitnessReport dg_noncontractivity_witness(const AncillaState& sigma = AncillaState{});

// D_p restricted to Bell-diagonal classical states: min over axes of
// sum_pq |tau_pq|^p at the on-axis optimum l = c_i. Reduces to c0 for p = 1
// and to the 2-norm geometric discord for p = 2.
double dp_bd(const CorrelationVector& c, int p);

// The optimal Bell-diagonal closest classical state for the p-norm
// (on the axis minimizing dp_bd, with l = c_i).
ComplexMatrix closest_bd_classical(const CorrelationVector& c, int p = 1);

} // namespace qcorr::channels
