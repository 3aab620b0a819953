#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorr::measures {

using linalg::cplx;
using linalg::identity2;
using linalg::kron;
using linalg::partial_trace;
using linalg::partial_transpose;
using linalg::pauli;
using linalg::Subsystem;
using states::bd_eigenvalues;
using states::correlation_stats;
using states::require_physical;

namespace {

// x * log2(x), with the 0 log 0 = 0 convention
double xlog2x(double x) { return (x <= 0.0) ? 0.0 : x * std::log2(x); }

double entropy_from_eigenvalues(const std::vector<double>& eig) {
    double s = 0.0;
    for (double e : eig) s -= xlog2x(std::max(e, 0.0));
    return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    return entropy_from_eigenvalues(linalg::hermitian_eigenvalues(rho));
}

} // namespace

double entropic_discord_bd(const CorrelationVector& c) {
    require_physical(c);
    const auto lam = bd_eigenvalues(c);
    const double cp = correlation_stats(c).c_plus;
    // log2 of 4 * prod lambda^lambda / [(1-c+)^{(1-c+)/2} (1+c+)^{(1+c+)/2}]
    double q = 2.0;
    for (double l : lam) q += xlog2x(l);
    q -= 0.5 * (xlog2x(1.0 - cp) + xlog2x(1.0 + cp));
    return std::clamp(q, 0.0, 1.0);
}

namespace {

// Conditional entropy sum_k p_k S(rho_{b|k}) for a projective measurement
// along n on subsystem a, computed from matrices.
double conditional_entropy(const ComplexMatrix& rho, const std::array<double, 3>& n) {
    ComplexMatrix n_sigma(2, 2);
    for (int i = 1; i <= 3; ++i) {
        ComplexMatrix t = pauli(i);
        t *= n[i - 1];
        n_sigma += t;
    }
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        ComplexMatrix proj = 0.5 * (identity2() + sign * n_sigma);
        ComplexMatrix pi = kron(proj, identity2());
        ComplexMatrix meas = pi * rho * pi;
        const double pk = meas.trace().real();
        if (pk < 1e-14) continue;
        ComplexMatrix rho_b = partial_trace(meas, 2, 2, Subsystem::A);
        rho_b *= 1.0 / pk;
        total += pk * von_neumann_entropy(rho_b);
    }
    return total;
}

std::array<double, 3> axis_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

} // namespace

double entropic_discord_numeric(const CorrelationVector& c, int grid_resolution,
                                std::array<double, 3>& best_axis) {
    require_physical(c);
    const ComplexMatrix rho = states::bd_density_matrix(c);

    // I(rho) = S(rho_a) + S(rho_b) - S(rho); marginals are computed, not assumed.
    const double s_ab = von_neumann_entropy(rho);
    const double s_a = von_neumann_entropy(partial_trace(rho, 2, 2, Subsystem::B));
    const double s_b = von_neumann_entropy(partial_trace(rho, 2, 2, Subsystem::A));
    const double mutual_info = s_a + s_b - s_ab;

    double best = 1e300, best_theta = 0.0, best_phi = 0.0;
    double span_t = M_PI, span_p = 2.0 * M_PI;
    double cen_t = 0.5 * M_PI, cen_p = M_PI;
    int res = std::max(grid_resolution, 8);

    for (int round = 0; round < 6; ++round) {
        for (int i = 0; i <= res; ++i)
            for (int j = 0; j <= res; ++j) {
                const double theta = cen_t - 0.5 * span_t + span_t * i / res;
                const double phi = cen_p - 0.5 * span_p + span_p * j / res;
                if (theta < 0.0 || theta > M_PI) continue;
                const double val = conditional_entropy(rho, axis_from_angles(theta, phi));
                if (val < best) {
                    best = val;
                    best_theta = theta;
                    best_phi = phi;
                }
            }
        cen_t = best_theta;
        cen_p = best_phi;
        span_t /= res / 4.0 + 1.0;
        span_p /= res / 4.0 + 1.0;
        res = 8;
    }

    best_axis = axis_from_angles(best_theta, best_phi);
    const double classical = s_b - best;
    return mutual_info - classical;
}

double entropic_discord_numeric(const CorrelationVector& c, int grid_resolution) {
    std::array<double, 3> axis;
    return entropic_discord_numeric(c, grid_resolution, axis);
}

double geometric_discord_2norm(const CorrelationVector& c) {
    require_physical(c);
    const auto s = correlation_stats(c);
    return 0.25 * (s.c_minus * s.c_minus + s.c_zero * s.c_zero);
}

double geometric_discord_1norm(const CorrelationVector& c) {
    require_physical(c);
    return correlation_stats(c).c_zero;
}

double negativity(const ComplexMatrix& rho, std::size_t da, std::size_t db) {
    states::require_density_matrix(rho);
    const auto pt = partial_transpose(rho, da, db, Subsystem::A);
    const double n = linalg::schatten_norm(pt, 1) - 1.0;
    if (n < -1e-12) throw std::runtime_error("negativity below roundoff guard");
    return std::max(n, 0.0);
}

MeasureSet measure_set(const CorrelationVector& c) {
    MeasureSet m;
    m.entropic_q = entropic_discord_bd(c);
    m.geometric_2norm = geometric_discord_2norm(c);
    m.geometric_1norm = geometric_discord_1norm(c);
    m.negativity = negativity(states::bd_density_matrix(c), 2, 2);
    return m;
}

namespace {

// cyclic successors of axis i in {1,2,3}
void cyclic(int axis, int& next1, int& next2) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("axis must be 1, 2 or 3");
    next1 = axis % 3 + 1;
    next2 = next1 % 3 + 1;
}

} // namespace

double appendixA_f(const CorrelationVector& c, int axis, double l) {
    require_physical(c);
    if (std::abs(l) > 1.0) throw std::invalid_argument("|l| > 1");
    int i1, i2;
    cyclic(axis, i1, i2);
    const double di = l - c.component(axis);
    const double dp = c.component(i2) + c.component(i1);
    const double dm = c.component(i2) - c.component(i1);
    return 0.25 * (std::abs(di + dp) + std::abs(di - dp) + std::abs(di + dm) +
                   std::abs(di - dm));
}

double appendixA_axis_min(const CorrelationVector& c, int axis) {
    require_physical(c);
    int i1, i2;
    cyclic(axis, i1, i2);
    return std::max(std::abs(c.component(i1)), std::abs(c.component(i2)));
}

namespace {

// Minimal double-double arithmetic (~32 significant digits).  Needed because
// the gamma- radicand c^2 - alpha.u - 2 sqrt(beta.u) can cross zero along flat
// directions of the objective; the square root amplifies any rounding error e
// in the radicand to sqrt(e) in the result, so plain double (or long double)
// evaluation can dip ~1e-11 (~4e-12) below the exact flat value near the
// crossing.  Double-double bounds that amplified error near 1e-16.
struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const DD r = two_sum(s.hi, s.lo);
    return r;
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    const DD r = two_sum(p.hi, p.lo);
    return r;
}

inline DD dd_scale(DD a, double f) {
    DD p = two_prod(a.hi, f);
    p.lo += a.lo * f;
    return two_sum(p.hi, p.lo);
}

inline DD dd_sqrt(DD a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    const double y = std::sqrt(a.hi);
    // One Newton step: y + (a - y^2) / (2y), with y^2 formed exactly.
    const DD y2 = two_prod(y, y);
    const DD diff = dd_add(a, {-y2.hi, -y2.lo});
    return two_sum(y, diff.hi / (2.0 * y));
}

}  // namespace

GammaPair gamma_pm(const CorrelationVector& c, const MeasurementDirection& u) {
    require_physical(c);
    u.validate();
    const double cv[3] = {c.c1, c.c2, c.c3};
    DD a[3];
    for (int i = 0; i < 3; ++i) a[i] = two_prod(cv[i], cv[i]);
    const DD b[3] = {dd_mul(a[1], a[2]), dd_mul(a[0], a[2]), dd_mul(a[0], a[1])};
    DD s{0.0, 0.0}, bu{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        // c^2 - alpha.u = sum_i alpha_i (1 - u_i), no cancellation termwise
        const DD one_minus_u = two_sum(1.0, -u.u[i]);
        s = dd_add(s, dd_mul(a[i], one_minus_u));
        bu = dd_add(bu, dd_scale(b[i], u.u[i]));
    }
    const DD root = dd_sqrt(bu);

    GammaPair g;
    for (int sign : {-1, 1}) {
        const DD rad = dd_add(s, dd_scale(root, 2.0 * sign));
        if (rad.hi < -1e-9) throw std::runtime_error("gamma radicand below -1e-9");
        const DD gamma = dd_sqrt(rad);
        (sign < 0 ? g.gamma_minus : g.gamma_plus) = 0.25 * (gamma.hi + gamma.lo);
    }
    return g;
}

SimplexMinimum noq_minimize(const CorrelationVector& c, int grid_resolution) {
    require_physical(c);
    const int r = std::max(grid_resolution, 1);

    SimplexMinimum best;
    best.value = 1e300;
    auto consider = [&](double u1, double u2, double u3, double val) {
        if (val < best.value) {
            best.value = val;
            best.argmin = MeasurementDirection{{u1, u2, u3}};
        }
    };
    auto eval = [&](const MeasurementDirection& u) {
        const auto g = gamma_pm(c, u);
        return 2.0 * (g.gamma_minus + g.gamma_plus);
    };

    // vertices first, so they win ties with interior lattice points
    consider(1.0, 0.0, 0.0, eval(MeasurementDirection{{1.0, 0.0, 0.0}}));
    consider(0.0, 1.0, 0.0, eval(MeasurementDirection{{0.0, 1.0, 0.0}}));
    consider(0.0, 0.0, 1.0, eval(MeasurementDirection{{0.0, 0.0, 1.0}}));

    // Evaluate lattice points (i/r, j/r, k/r) from their integer coordinates
    // in a form scaled by r, so the point lies exactly on the simplex.  The
    // rounded doubles i/r need not sum to 1; near a kink of the objective the
    // square root amplifies that ~1e-17 violation to ~1e-12, which would let
    // interior points dip below the exact vertex minimum.
    const double cv[3] = {c.c1, c.c2, c.c3};
    DD a[3];
    for (int l = 0; l < 3; ++l) a[l] = two_prod(cv[l], cv[l]);
    const DD b[3] = {dd_mul(a[1], a[2]), dd_mul(a[0], a[2]), dd_mul(a[0], a[1])};
    const double inv_2sqrt_r = 0.5 / std::sqrt(static_cast<double>(r));

    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r - i; ++j) {
            const int k = r - i - j;
            const int n[3] = {i, j, k};
            DD sr{0.0, 0.0}, br{0.0, 0.0};  // r*(c^2 - alpha.u), r*(beta.u)
            for (int l = 0; l < 3; ++l) {
                sr = dd_add(sr, dd_scale(a[l], static_cast<double>(r - n[l])));
                br = dd_add(br, dd_scale(b[l], static_cast<double>(n[l])));
            }
            const DD g2 = dd_scale(dd_sqrt(dd_scale(br, static_cast<double>(r))), 2.0);
            const DD radm = dd_add(sr, {-g2.hi, -g2.lo});
            const DD radp = dd_add(sr, g2);
            const DD sm = dd_sqrt(radm), sp = dd_sqrt(radp);
            const double val = ((sm.hi + sp.hi) + (sm.lo + sp.lo)) * inv_2sqrt_r;
            consider(static_cast<double>(i) / r, static_cast<double>(j) / r,
                     static_cast<double>(k) / r, val);
        }
    return best;
}

HierarchyRecord hierarchy_check(const CorrelationVector& c) {
    const auto m = measure_set(c);
    HierarchyRecord h;
    h.d1_sq = m.geometric_1norm * m.geometric_1norm;
    h.two_dg = 2.0 * m.geometric_2norm;
    h.q_sq = m.entropic_q * m.entropic_q;
    h.n_sq = m.negativity * m.negativity;
    const double tol = 1e-10;
    h.d1_ge_dg = h.d1_sq >= h.two_dg - tol;
    h.dg_ge_q = h.two_dg >= h.q_sq - tol;
    h.dg_ge_n = h.two_dg >= h.n_sq - tol;
    return h;
}

std::vector<MapPoint> monotonicity_map(int resolution, double step, double eps_mono) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    if (step <= 0.0) throw std::invalid_argument("step must be positive");

    // collect interior grid points of the triangle c1 in [0, 1], c3 in [-1, 1-2c1]
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= resolution; ++i) {
        const double c1 = static_cast<double>(i) / resolution;
        const double hi = 1.0 - 2.0 * c1;
        for (int j = 0; j <= resolution; ++j) {
            const double c3 = -1.0 + (hi + 1.0) * j / resolution;
            if (c3 - step < -1.0 || c3 + step > hi) continue; // derivative stencil must stay inside
            pts.emplace_back(c1, c3);
        }
    }

    std::vector<MapPoint> out(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(pts.size()); ++idx) {
        const auto [c1, c3] = pts[idx];
        auto eval = [&](double x3) {
            CorrelationVector c{c1, c1, x3};
            return std::array<double, 3>{entropic_discord_bd(c), geometric_discord_2norm(c),
                                         geometric_discord_1norm(c)};
        };
        const auto lo = eval(c3 - step);
        const auto hi = eval(c3 + step);
        MapPoint p;
        p.c1 = c1;
        p.c3 = c3;
        p.dq_dc3 = (hi[0] - lo[0]) / (2.0 * step);
        p.ddg_dc3 = (hi[1] - lo[1]) / (2.0 * step);
        p.dd1_dc3 = (hi[2] - lo[2]) / (2.0 * step);
        p.related_q_dg = p.dq_dc3 * p.ddg_dc3 >= -eps_mono;
        p.related_q_d1 = p.dq_dc3 * p.dd1_dc3 >= -eps_mono;
        out[idx] = p;
    }
    return out;
}

} // namespace qcorr::measures
