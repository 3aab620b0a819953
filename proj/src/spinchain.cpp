#include "qcorr/spinchain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorr::spinchain {

using linalg::cplx;
using linalg::LanczosResult;

void XXZParameters::validate() const {
    if (length < 2 || length > 16 || length % 2 != 0)
        throw std::invalid_argument("chain length must be even and within [2, 16]");
    if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
}

SparseReal build_hamiltonian(const XXZParameters& p) {
    p.validate();
    const int L = p.length;
    const std::size_t dim = std::size_t{1} << L;
    SparseReal h(dim);

    for (std::size_t n = 0; n < dim; ++n) {
        double diag = 0.0;
        for (int i = 0; i < L; ++i) {
            const int j = (i + 1) % L;
            const int si = (n >> i) & 1, sj = (n >> j) & 1;
            const double zi = 1.0 - 2.0 * si, zj = 1.0 - 2.0 * sj;
            diag += -0.5 * p.delta * zi * zj;
            if (si != sj) {
                // sx sx + sy sy flips an antiparallel pair with weight 2
                const std::size_t m = n ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
                h.add(n, m, -1.0);
            }
        }
        if (diag != 0.0) h.add(n, n, diag);
    }
    return h;
}

SparseReal total_sz(int length) {
    const std::size_t dim = std::size_t{1} << length;
    SparseReal op(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        double z = 0.0;
        for (int i = 0; i < length; ++i) z += 1.0 - 2.0 * ((n >> i) & 1);
        if (z != 0.0) op.add(n, n, z);
    }
    return op;
}

GroundState ground_state(const SparseReal& h, const XXZParameters& p, double degen_tol) {
    p.validate();
    GroundState gs;
    std::vector<std::vector<double>> deflate;
    const int max_degeneracy = p.length + 2;

    for (int k = 0; k < max_degeneracy; ++k) {
        LanczosResult res =
            linalg::lanczos_lowest(h, deflate, 0x5eed0000ULL + static_cast<std::uint64_t>(k), 500);
        if (!res.converged)
            throw std::runtime_error("Lanczos did not converge, residual " +
                                     std::to_string(res.residual));
        if (k == 0) {
            gs.energy = res.value;
            gs.residual = res.residual;
        } else if (res.value > gs.energy + degen_tol) {
            break;
        }
        deflate.push_back(res.vector);
        gs.vectors.push_back(std::move(res.vector));
    }
    return gs;
}

GroundState ground_state_dense(const SparseReal& h, const XXZParameters& p, double degen_tol) {
    p.validate();
    if (p.length > 8) throw std::invalid_argument("dense path limited to L <= 8");
    std::vector<double> values;
    ComplexMatrix vectors;
    linalg::hermitian_eigensystem(h.to_dense(), values, vectors);

    GroundState gs;
    gs.energy = values[0];
    for (std::size_t j = 0; j < values.size() && values[j] <= values[0] + degen_tol; ++j) {
        std::vector<double> v(h.dim());
        for (std::size_t i = 0; i < h.dim(); ++i) v[i] = vectors(i, j).real();
        double n = 0.0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        for (double& x : v) x /= n;
        gs.vectors.push_back(std::move(v));
    }
    return gs;
}

ComplexMatrix two_site_rdm(const GroundState& gs, int site, int length) {
    if (gs.vectors.empty()) throw std::invalid_argument("empty ground state");
    if (site < 0 || site >= length) throw std::invalid_argument("site index out of range");
    const int s2 = (site + 1) % length;
    const std::size_t dim = std::size_t{1} << length;
    if (gs.vectors[0].size() != dim) throw std::invalid_argument("state dimension mismatch");

    ComplexMatrix rho(4, 4);
    const double w = 1.0 / static_cast<double>(gs.vectors.size());
    for (const auto& psi : gs.vectors) {
        for (std::size_t n = 0; n < dim; ++n) {
            const int a = static_cast<int>((n >> site) & 1);
            const int b = static_cast<int>((n >> s2) & 1);
            const int row = a * 2 + b;
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    std::size_t m = n;
                    if (a2 != a) m ^= std::size_t{1} << site;
                    if (b2 != b) m ^= std::size_t{1} << s2;
                    rho(row, a2 * 2 + b2) += w * psi[n] * psi[m];
                }
        }
    }
    return rho;
}

CorrelationVector correlation_vector(const ComplexMatrix& rdm) {
    states::require_density_matrix(rdm);
    const double tol = 1e-10;

    // X-state pattern with zero magnetization: rdm = diag(a,b1,b2,d) plus a
    // real z coupling the middle block, a = d, b1 = b2
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool allowed = (i == j) || (i == 1 && j == 2) || (i == 2 && j == 1);
            if (!allowed && std::abs(rdm(i, j)) > tol)
                throw std::invalid_argument("reduced density matrix is not U(1)-symmetric");
        }
    const double a = rdm(0, 0).real(), d = rdm(3, 3).real();
    const double b1 = rdm(1, 1).real(), b2 = rdm(2, 2).real();
    if (std::abs(a - d) > tol || std::abs(b1 - b2) > tol)
        throw std::invalid_argument("reduced density matrix has nonzero magnetization");
    if (std::abs(rdm(1, 2).imag()) > tol)
        throw std::invalid_argument("reduced density matrix has complex exchange element");

    const double z = rdm(1, 2).real();
    CorrelationVector c{2.0 * z, 2.0 * z, 4.0 * a - 1.0};
    states::require_physical(c);
    return c;
}

double magnetization_density(const GroundState& gs, int length) {
    if (gs.vectors.empty()) throw std::invalid_argument("empty ground state");
    const std::size_t dim = std::size_t{1} << length;
    double total = 0.0;
    for (const auto& psi : gs.vectors) {
        double m = 0.0;
        for (std::size_t n = 0; n < dim; ++n) {
            double z = 0.0;
            for (int i = 0; i < length; ++i) z += 1.0 - 2.0 * ((n >> i) & 1);
            m += psi[n] * psi[n] * z;
        }
        total += m;
    }
    return total / (gs.vectors.size() * length);
}

namespace {

double ground_energy_density(int length, double delta) {
    const XXZParameters p{length, delta};
    const auto gs = ground_state(build_hamiltonian(p), p);
    return gs.energy / length;
}

struct Correlators {
    double gxx = 0.0, gyy = 0.0, gzz = 0.0;
};

Correlators bond_correlators(const ComplexMatrix& rdm) {
    Correlators g;
    const auto expect = [&](int i) {
        const auto op = linalg::kron(linalg::pauli(i), linalg::pauli(i));
        return (op * rdm).trace().real();
    };
    g.gxx = expect(1);
    g.gyy = expect(2);
    g.gzz = expect(3);
    return g;
}

} // namespace

HfResult hellmann_feynman_check(const XXZParameters& p, double h) {
    p.validate();
    if (h <= 0.0) throw std::invalid_argument("step must be positive");
    if (std::abs(p.delta - 1.0) <= h)
        throw std::invalid_argument("delta within h of the level crossing at delta = 1");

    const auto gs = ground_state(build_hamiltonian(p), p);
    const auto rdm = two_site_rdm(gs, 0, p.length);
    const auto g = bond_correlators(rdm);
    const double eps = gs.energy / p.length;

    HfResult r;
    r.deps_ddelta = (ground_energy_density(p.length, p.delta + h) -
                     ground_energy_density(p.length, p.delta - h)) /
                    (2.0 * h);
    r.residual1 = std::abs(p.delta * r.deps_ddelta - eps - 0.5 * (g.gxx + g.gyy));
    r.residual2 = std::abs(g.gzz + 2.0 * r.deps_ddelta);
    return r;
}

SweepRecord sweep_point(double delta, int length, double h) {
    const XXZParameters p{length, delta};
    p.validate();

    const auto gs = ground_state(build_hamiltonian(p), p);
    const auto rdm = two_site_rdm(gs, 0, length);
    const auto g = bond_correlators(rdm);

    SweepRecord rec;
    rec.delta = delta;
    rec.length = length;
    rec.energy_density = gs.energy / length;
    rec.gxx = g.gxx;
    rec.gyy = g.gyy;
    rec.gzz = g.gzz;
    rec.sz = magnetization_density(gs, length);
    rec.c = correlation_vector(rdm);
    rec.measures = measures::measure_set(rec.c);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(delta - 1.0) <= 2.0 * h + 1e-12) {
        rec.de_ddelta = nan;
        rec.hf_res1 = nan;
        rec.hf_res2 = nan;
    } else {
        const auto hf = hellmann_feynman_check(p, h);
        rec.de_ddelta = hf.deps_ddelta;
        rec.hf_res1 = hf.residual1;
        rec.hf_res2 = hf.residual2;
    }
    return rec;
}

std::vector<SweepRecord> sweep(double delta_min, double delta_max, double step, int length,
                               double h) {
    if (delta_min < -2.5 - 1e-12 || delta_max > 2.5 + 1e-12 || delta_min > delta_max)
        throw std::invalid_argument("sweep range must lie within [-2.5, 2.5]");
    if (step <= 0.0) throw std::invalid_argument("step must be positive");

    std::vector<double> deltas;
    for (double d = delta_min; d <= delta_max + 1e-9; d += step) deltas.push_back(d);

    std::vector<SweepRecord> out(deltas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(deltas.size()); ++i)
        out[i] = sweep_point(deltas[i], length, h);
    return out;
}

} // namespace qcorr::spinchain
