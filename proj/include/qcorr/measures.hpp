// measures.hpp — Correlation measures for Bell-diagonal states: entropic
// discord (closed form and projective-measurement minimization), 2-norm and
// 1-norm geometric discord, negativity, the classical-axis minimization, the
// gamma± objective with its simplex minimizer, hierarchy checks, and the
// monotonicity map over U(1)-symmetric states.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

#include <array>
#include <vector>

namespace qcorr::measures {

using linalg::ComplexMatrix;
using states::CorrelationVector;
using states::MeasurementDirection;

// Bundle of the four measures for one state.
struct MeasureSet {
    double entropic_q = 0.0;
    double geometric_2norm = 0.0;
    double geometric_1norm = 0.0;
    double negativity = 0.0;
};

struct GammaPair {
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
};

// Closed-form entropic discord (Luo) for a Bell-diagonal state; in [0,1].
double entropic_discord_bd(const CorrelationVector& c);

// Numeric oracle: minimizes the conditional entropy over projective
// measurement axes on a (theta, phi) grid with local refinement, assembling
// I - J from von Neumann entropies of matrices. Agrees with the closed form
// within 1e-6 at grid_resolution >= 64.
double entropic_discord_numeric(const CorrelationVector& c, int grid_resolution = 64);

// Same minimization but also reports the optimal measurement axis.
double entropic_discord_numeric(const CorrelationVector& c, int grid_resolution,
                                std::array<double, 3>& best_axis);

// (c_minus^2 + c_zero^2) / 4
double geometric_discord_2norm(const CorrelationVector& c);

// c_zero (the analytic 1-norm result)
double geometric_discord_1norm(const CorrelationVector& c);

// ||rho^{t_a}||_1 - 1, clamped at zero.
double negativity(const ComplexMatrix& rho, std::size_t da, std::size_t db);

MeasureSet measure_set(const CorrelationVector& c);

// f_i(l) = sum_pq |tau_pq| for the classical axis candidate l on axis i.
double appendixA_f(const CorrelationVector& c, int axis, double l);

// min_l f_i(l) = max(|c_{i+1}|, |c_{i+2}|), attained at l = c_i.
double appendixA_axis_min(const CorrelationVector& c, int axis);

// gamma± = (1/4) sqrt(c^2 - alpha.u ± 2 sqrt(beta.u)), radicands clamped at
// -1e-12; throws if a radicand drops below -1e-9.
GammaPair gamma_pm(const CorrelationVector& c, const MeasurementDirection& u);

struct SimplexMinimum {
    double value = 0.0;
    MeasurementDirection argmin;
};

// Minimizes 2(gamma- + gamma+) over a barycentric simplex lattice of the given
// resolution; the three vertices are always evaluated.
SimplexMinimum noq_minimize(const CorrelationVector& c, int grid_resolution = 100);

struct HierarchyRecord {
    double d1_sq = 0.0, two_dg = 0.0, q_sq = 0.0, n_sq = 0.0;
    bool d1_ge_dg = false, dg_ge_q = false, dg_ge_n = false;

    bool all_ok() const { return d1_ge_dg && dg_ge_q && dg_ge_n; }
};

// D1^2 >= 2 D_G >= Q^2, N^2 with tolerance 1e-10.
HierarchyRecord hierarchy_check(const CorrelationVector& c);

struct MapPoint {
    double c1 = 0.0, c3 = 0.0;
    double dq_dc3 = 0.0, ddg_dc3 = 0.0, dd1_dc3 = 0.0;
    bool related_q_dg = false, related_q_d1 = false;
};

// Central-difference derivatives along c3 on a grid over the U(1) triangle
// (c1 = c2 >= 0, -1 <= c3 <= 1 - 2 c1). A pair is "monotonically related along
// c3" iff the derivative product >= -eps_mono.
std::vector<MapPoint> monotonicity_map(int resolution, double step,
                                       double eps_mono = 1e-8);

} // namespace qcorr::measures
