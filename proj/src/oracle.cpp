#include "qcorr/oracle.hpp"

#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorr::oracle {

using linalg::cplx;

ComplexMatrix sample_classical_matrix(std::size_t db, RngStream& rng) {
    if (db != 2 && db != 4) throw std::invalid_argument("unsupported b-side dimension");

    // qubit projectors on side a, normalized random PSD states on side b
    const double p1 = rng.uniform();
    const auto n = rng.unit_vector();
    ComplexMatrix n_sigma(2, 2);
    for (int i = 1; i <= 3; ++i) {
        ComplexMatrix t = linalg::pauli(i);
        t *= n[i - 1];
        n_sigma += t;
    }
    auto random_state = [&rng](std::size_t d) {
        ComplexMatrix g(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
        ComplexMatrix rho = g * g.dagger();
        rho *= 1.0 / rho.trace().real();
        return rho;
    };
    ComplexMatrix pi_plus = 0.5 * (linalg::identity2() + n_sigma);
    ComplexMatrix pi_minus = 0.5 * (linalg::identity2() - n_sigma);
    ComplexMatrix out = linalg::kron(p1 * pi_plus, random_state(db));
    out += linalg::kron((1.0 - p1) * pi_minus, random_state(db));
    return out;
}

double d1_sample_min(const ComplexMatrix& rho, long nc, RngStream& rng) {
    if (nc < 1) throw std::invalid_argument("nc must be >= 1");
    const auto mins = d1_sample_min_checkpoints(rho, {nc}, rng);
    return mins[0];
}

std::vector<double> d1_sample_min_checkpoints(const ComplexMatrix& rho,
                                              const std::vector<long>& checkpoints,
                                              RngStream& rng) {
    if (checkpoints.empty() || checkpoints.front() < 1 ||
        !std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("checkpoints must be ascending and >= 1");
    states::require_density_matrix(rho);

    std::vector<double> result;
    result.reserve(checkpoints.size());
    double best = 1e300;
    long drawn = 0;
    for (long cp : checkpoints) {
        for (; drawn < cp; ++drawn) {
            const auto rc = states::cq_density_matrix(states::sample_classical(rng));
            best = std::min(best, linalg::trace_distance(rho, rc));
        }
        result.push_back(best);
    }
    return result;
}

double delta_statistic(const CorrelationVector& c, long nc, RngStream& rng) {
    const double c0 = states::correlation_stats(c).c_zero;
    return d1_sample_min(states::bd_density_matrix(c), nc, rng) - c0;
}

namespace {

std::vector<long> decade_checkpoints(long nc) {
    std::vector<long> cps;
    for (long v = 10; v < nc; v *= 10) cps.push_back(v);
    cps.push_back(nc);
    return cps;
}

} // namespace

DeltaStats delta_histogram(int n_states, long nc, int bins, std::uint64_t seed,
                           bool parallel) {
    if (n_states < 1 || nc < 1) throw std::invalid_argument("n_states and nc must be >= 1");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");

    const auto cps = decade_checkpoints(nc);
    const std::size_t ncp = cps.size();

    DeltaStats st;
    st.checkpoints = cps;
    st.minima.resize(n_states);
    st.deltas.resize(n_states);
    std::vector<double> cp_delta_sums(ncp, 0.0);
    std::vector<std::vector<double>> per_state_cp(n_states);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (int i = 0; i < n_states; ++i) {
        RngStream state_rng(seed, static_cast<std::uint64_t>(i));
        RngStream classical_rng(seed, 0x10000000ULL + static_cast<std::uint64_t>(i));
        const auto c = states::sample_bd_uniform(state_rng);
        const double c0 = states::correlation_stats(c).c_zero;
        const auto rho = states::bd_density_matrix(c);
        per_state_cp[i] = d1_sample_min_checkpoints(rho, cps, classical_rng);
        st.minima[i] = per_state_cp[i].back();
        st.deltas[i] = st.minima[i] - c0;
        for (auto& m : per_state_cp[i]) m -= c0;
    }

    // ordered accumulation keeps results independent of the thread count
    for (int i = 0; i < n_states; ++i)
        for (std::size_t k = 0; k < ncp; ++k) cp_delta_sums[k] += per_state_cp[i][k];

    st.checkpoint_means.resize(ncp);
    for (std::size_t k = 0; k < ncp; ++k) st.checkpoint_means[k] = cp_delta_sums[k] / n_states;
    st.mean_delta = st.checkpoint_means.back();

    const double max_delta = *std::max_element(st.deltas.begin(), st.deltas.end());
    const double hi = std::max(max_delta, 1e-12);
    st.bin_edges.resize(bins + 1);
    st.counts.assign(bins, 0);
    for (int b = 0; b <= bins; ++b) st.bin_edges[b] = hi * b / bins;
    for (double d : st.deltas) {
        int b = static_cast<int>(std::floor(std::max(d, 0.0) / hi * bins));
        b = std::clamp(b, 0, bins - 1);
        ++st.counts[b];
    }

    if (ncp >= 3) {
        std::vector<std::pair<double, double>> pts;
        bool all_positive = true;
        for (std::size_t k = 0; k < ncp; ++k) {
            if (st.checkpoint_means[k] <= 0.0) all_positive = false;
            pts.emplace_back(static_cast<double>(cps[k]), st.checkpoint_means[k]);
        }
        if (all_positive) {
            const auto [a, b] = powerlaw_fit(pts);
            st.fit_amplitude = a;
            st.fit_exponent = b;
        }
    }
    return st;
}

std::pair<double, double> powerlaw_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("powerlaw_fit needs >= 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(points.size());
    for (const auto& [x, y] : points) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("powerlaw_fit needs positive data");
        const double lx = std::log10(x), ly = std::log10(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) throw std::invalid_argument("powerlaw_fit: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    return {std::pow(10.0, intercept), slope};
}

namespace {

double hs_distance_sq(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
    return s;
}

} // namespace

double d2_sample_min(const ComplexMatrix& rho, std::size_t db, long nc, RngStream& rng) {
    if (nc < 1) throw std::invalid_argument("nc must be >= 1");
    if (db != 2 && db != 4) throw std::invalid_argument("unsupported b-side dimension");
    states::require_density_matrix(rho);
    if (rho.rows() != 2 * db) throw std::invalid_argument("dimension mismatch");

    double best = 1e300;
    for (long k = 0; k < nc; ++k)
        best = std::min(best, hs_distance_sq(rho, sample_classical_matrix(db, rng)));
    return best;
}

double d1_sample_min_extended(const ComplexMatrix& rho, std::size_t db, long nc,
                              RngStream& rng) {
    if (nc < 1) throw std::invalid_argument("nc must be >= 1");
    if (db != 2 && db != 4) throw std::invalid_argument("unsupported b-side dimension");
    states::require_density_matrix(rho);
    if (rho.rows() != 2 * db) throw std::invalid_argument("dimension mismatch");

    double best = 1e300;
    for (long k = 0; k < nc; ++k)
        best = std::min(best, linalg::trace_distance(rho, sample_classical_matrix(db, rng)));
    return best;
}

} // namespace qcorr::oracle
