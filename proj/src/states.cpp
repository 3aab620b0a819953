#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr::states {

using linalg::cplx;
using linalg::identity2;
using linalg::kron;
using linalg::pauli;

double CorrelationVector::component(int axis) const {
    switch (axis) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
    }
}

void ClassicalQuantumState::validate() const {
    if (p1 < -1e-12 || p1 > 1.0 + 1e-12)
        throw std::invalid_argument("classical-quantum state: p1 outside [0,1]");
    const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("classical-quantum state: axis is not a unit vector");
    for (const auto& r : {bloch1, bloch2}) {
        const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        if (rn > 1.0 + 1e-12)
            throw std::invalid_argument("classical-quantum state: Bloch vector outside ball");
    }
}

void MeasurementDirection::validate() const {
    if (u[0] < -1e-12 || u[1] < -1e-12 || u[2] < -1e-12)
        throw std::invalid_argument("measurement direction: negative component");
    if (std::abs(u[0] + u[1] + u[2] - 1.0) > 1e-12)
        throw std::invalid_argument("measurement direction: simplex constraint violated");
}

std::array<double, 4> bd_eigenvalues(const CorrelationVector& c) {
    std::array<double, 4> lam{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double si = (i == 0) ? 1.0 : -1.0;
            const double sj = (j == 0) ? 1.0 : -1.0;
            lam[i * 2 + j] = 0.25 * (1.0 + si * c.c1 - si * sj * c.c2 + sj * c.c3);
        }
    return lam;
}

bool is_physical(const CorrelationVector& c) {
    const auto lam = bd_eigenvalues(c);
    return *std::min_element(lam.begin(), lam.end()) >= -1e-12;
}

void require_physical(const CorrelationVector& c) {
    if (!is_physical(c))
        throw std::invalid_argument("correlation vector outside tetrahedron");
}

ComplexMatrix bd_density_matrix(const CorrelationVector& c) {
    require_physical(c);
    ComplexMatrix rho = ComplexMatrix::identity(4);
    const double cs[3] = {c.c1, c.c2, c.c3};
    for (int i = 1; i <= 3; ++i) {
        ComplexMatrix t = kron(pauli(i), pauli(i));
        t *= cs[i - 1];
        rho += t;
    }
    rho *= 0.25;
    return rho;
}

CorrelationVector from_density_matrix(const ComplexMatrix& rho) {
    require_density_matrix(rho);
    if (rho.rows() != 4) throw std::invalid_argument("expected a 4x4 density matrix");
    for (auto which : {linalg::Subsystem::A, linalg::Subsystem::B}) {
        const auto red = partial_trace(rho, 2, 2, which);
        auto dev = red - (0.5 * ComplexMatrix::identity(2));
        if (dev.frobenius_norm() > 1e-8)
            throw std::invalid_argument("marginals not maximally mixed: state is not Bell-diagonal");
    }
    CorrelationVector c;
    double* out[3] = {&c.c1, &c.c2, &c.c3};
    for (int i = 1; i <= 3; ++i) {
        const auto op = kron(pauli(i), pauli(i));
        *out[i - 1] = (op * rho).trace().real();
    }
    return c;
}

static ComplexMatrix bloch_qubit(const std::array<double, 3>& r) {
    ComplexMatrix rho = ComplexMatrix::identity(2);
    for (int i = 1; i <= 3; ++i) {
        ComplexMatrix t = pauli(i);
        t *= r[i - 1];
        rho += t;
    }
    rho *= 0.5;
    return rho;
}

ComplexMatrix cq_density_matrix(const ClassicalQuantumState& s) {
    s.validate();
    const ComplexMatrix n_sigma = [&] {
        ComplexMatrix m(2, 2);
        for (int i = 1; i <= 3; ++i) {
            ComplexMatrix t = pauli(i);
            t *= s.axis[i - 1];
            m += t;
        }
        return m;
    }();
    ComplexMatrix pi_plus = 0.5 * (identity2() + n_sigma);
    ComplexMatrix pi_minus = 0.5 * (identity2() - n_sigma);

    ComplexMatrix rho = kron(s.p1 * pi_plus, bloch_qubit(s.bloch1));
    rho += kron((1.0 - s.p1) * pi_minus, bloch_qubit(s.bloch2));
    return rho;
}

ComplexMatrix bd_classical_density_matrix(const BellDiagonalClassicalState& s) {
    if (std::abs(s.l) > 1.0) throw std::invalid_argument("|l| > 1");
    CorrelationVector c;
    switch (s.axis) {
    case 1: c.c1 = s.l; break;
    case 2: c.c2 = s.l; break;
    case 3: c.c3 = s.l; break;
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
    }
    return bd_density_matrix(c);
}

CorrelationTriple correlation_stats(const CorrelationVector& c) {
    std::array<double, 3> a{std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
    std::sort(a.begin(), a.end());
    return {a[2], a[1], a[0]};
}

CorrelationVector sample_bd_uniform(RngStream& rng) {
    while (true) {
        CorrelationVector c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                            rng.uniform(-1.0, 1.0)};
        if (is_physical(c)) return c;
    }
}

ClassicalQuantumState sample_classical(RngStream& rng) {
    ClassicalQuantumState s;
    s.p1 = rng.uniform();
    s.axis = rng.unit_vector();
    s.bloch1 = rng.ball_point();
    s.bloch2 = rng.ball_point();
    return s;
}

void require_density_matrix(const ComplexMatrix& rho, double tol) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
    if (!rho.is_hermitian(1e-10)) throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol)
        throw std::invalid_argument("density matrix trace != 1");
    const auto eig = linalg::hermitian_eigenvalues(rho);
    if (eig.front() < -tol) throw std::invalid_argument("density matrix not PSD");
}

} // namespace qcorr::states
