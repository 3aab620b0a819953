#include "qcorr/linalg.hpp"

#include "qcorr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::symmetrized() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix pauli(int i) {
    ComplexMatrix m(2, 2);
    switch (i) {
    case 1:
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case 2:
        m(0, 1) = cplx(0.0, -1.0);
        m(1, 0) = cplx(0.0, 1.0);
        break;
    case 3:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    default:
        throw std::invalid_argument("pauli index must be 1, 2 or 3");
    }
    return m;
}

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

static void check_bipartite_dims(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    if (m.rows() != m.cols() || m.rows() != da * db)
        throw std::invalid_argument("matrix dimension does not match subsystem dims");
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t da, std::size_t db,
                                Subsystem which) {
    check_bipartite_dims(m, da, db);
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ib = 0; ib < db; ++ib)
            for (std::size_t ja = 0; ja < da; ++ja)
                for (std::size_t jb = 0; jb < db; ++jb) {
                    const std::size_t r = ia * db + ib, c = ja * db + jb;
                    const std::size_t rt = (which == Subsystem::A) ? ja * db + ib : ia * db + jb;
                    const std::size_t ct = (which == Subsystem::A) ? ia * db + jb : ja * db + ib;
                    out(rt, ct) = m(r, c);
                }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t da, std::size_t db,
                            Subsystem which) {
    check_bipartite_dims(m, da, db);
    if (which == Subsystem::B) {
        ComplexMatrix out(da, da);
        for (std::size_t ia = 0; ia < da; ++ia)
            for (std::size_t ja = 0; ja < da; ++ja)
                for (std::size_t ib = 0; ib < db; ++ib)
                    out(ia, ja) += m(ia * db + ib, ja * db + ib);
        return out;
    }
    ComplexMatrix out(db, db);
    for (std::size_t ib = 0; ib < db; ++ib)
        for (std::size_t jb = 0; jb < db; ++jb)
            for (std::size_t ia = 0; ia < da; ++ia)
                out(ib, jb) += m(ia * db + ib, ia * db + jb);
    return out;
}

// Cyclic Jacobi for complex Hermitian matrices. Rotates (p,q) pairs until the
// off-diagonal Frobenius norm drops below max(1e-13, 1e-16 * ||A||_F).
static void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* vecs) {
    const std::size_t n = a.rows();
    if (vecs) *vecs = ComplexMatrix::identity(n);
    const double tol = std::max(1e-13, 1e-16 * a.frobenius_norm());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) < tol) return;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const cplx phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // unitary U: U_pp = c, U_pq = -s*phase, U_qp = s*conj(phase), U_qq = c
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * s * std::conj(phase);
                    a(k, q) = -akp * s * phase + akq * c;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app * c * c + aqq * s * s + 2.0 * r * c * s;
                a(q, q) = app * s * s + aqq * c * c - 2.0 * r * c * s;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                if (vecs)
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx vkp = (*vecs)(k, p), vkq = (*vecs)(k, q);
                        (*vecs)(k, p) = vkp * c + vkq * s * std::conj(phase);
                        (*vecs)(k, q) = -vkp * s * phase + vkq * c;
                    }
            }
    }
}

static ComplexMatrix hermitian_input(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigensolve needs a square matrix");
    if (!m.is_hermitian(1e-12)) throw std::invalid_argument("matrix is not Hermitian");
    return m.symmetrized();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    ComplexMatrix a = hermitian_input(m);
    jacobi_diagonalize(a, nullptr);
    std::vector<double> vals(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) vals[i] = a(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

void hermitian_eigensystem(const ComplexMatrix& m, std::vector<double>& values,
                           ComplexMatrix& vectors) {
    ComplexMatrix a = hermitian_input(m);
    ComplexMatrix v;
    jacobi_diagonalize(a, &v);
    const std::size_t n = a.rows();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    values.resize(n);
    vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) vectors(i, j) = v(i, order[j]);
    }
}

double schatten_norm(const ComplexMatrix& m, int p) {
    if (p < 1) throw std::invalid_argument("Schatten norm needs p >= 1");
    const auto eig = hermitian_eigenvalues(m);
    double s = 0.0;
    for (double e : eig) s += std::pow(std::abs(e), p);
    return std::pow(s, 1.0 / p);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    return schatten_norm(a - b, 1);
}

// -- sparse --------------------------------------------------------------

void SparseReal::matvec(const double* x, double* y) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (const auto& e : rows_[i]) acc += e.val * x[e.col];
        y[i] = acc;
    }
}

ComplexMatrix SparseReal::to_dense() const {
    ComplexMatrix out(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (const auto& e : rows_[i]) out(i, e.col) += e.val;
    return out;
}

double SparseReal::commutator_norm(const SparseReal& a, const SparseReal& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
    const std::size_t n = a.dim();
    std::vector<double> col(n), tmp(n), ab(n), ba(n);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        b.matvec(col, tmp);
        a.matvec(tmp, ab);
        a.matvec(col, tmp);
        b.matvec(tmp, ba);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = ab[i] - ba[i];
            s += d * d;
        }
    }
    return std::sqrt(s);
}

// Symmetric tridiagonal QL with implicit shifts (tql2-style).
void tridiag_eigensystem(std::vector<double>& d, std::vector<double> e,
                         std::vector<std::vector<double>>* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);
    if (z) {
        z->assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) (*z)[i][i] = 1.0;
    }
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 50) throw std::runtime_error("tridiagonal QL failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z)
                    for (int k = 0; k < n; ++k) {
                        f = (*z)[k][i + 1];
                        (*z)[k][i + 1] = s * (*z)[k][i] + c * f;
                        (*z)[k][i] = c * (*z)[k][i] - s * f;
                    }
            }
            if (r == 0.0 && m - 1 >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

static void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : basis) {
            double dot = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) dot += w[k] * u[k];
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= dot * u[k];
        }
}

static double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

LanczosResult lanczos_lowest(const SparseReal& h,
                             const std::vector<std::vector<double>>& deflate,
                             std::uint64_t seed, int max_iter, double tol) {
    const std::size_t n = h.dim();
    const int m_max = std::min<int>(max_iter, static_cast<int>(n));

    RngStream rng(seed, 0x1a2cf05ULL);
    LanczosResult res;

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;

    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    orthogonalize(v, deflate);
    double nv = norm2(v);
    if (nv < 1e-12) {
        // deflation space exhausts the whole operator range we can reach
        res.converged = false;
        return res;
    }
    for (auto& x : v) x /= nv;
    basis.push_back(v);

    std::vector<double> w(n);
    for (int j = 0; j < m_max; ++j) {
        h.matvec(basis[j], w);
        double a = 0.0;
        for (std::size_t k = 0; k < n; ++k) a += w[k] * basis[j][k];
        alpha.push_back(a);
        orthogonalize(w, basis);
        orthogonalize(w, deflate);
        const double b = norm2(w);

        // Ritz estimate from the current tridiagonal
        std::vector<double> d = alpha;
        std::vector<double> e(beta.begin(), beta.end());
        std::vector<std::vector<double>> z;
        tridiag_eigensystem(d, e, &z);
        int lo = 0;
        for (std::size_t i = 1; i < d.size(); ++i)
            if (d[i] < d[lo]) lo = static_cast<int>(i);
        const double resid = b * std::abs(z[alpha.size() - 1][lo]);

        res.value = d[lo];
        res.residual = resid;
        res.iterations = j + 1;

        if (resid < tol || b < 1e-14 || j == m_max - 1) {
            res.vector.assign(n, 0.0);
            for (std::size_t i = 0; i < alpha.size(); ++i)
                for (std::size_t k = 0; k < n; ++k) res.vector[k] += z[i][lo] * basis[i][k];
            const double nn = norm2(res.vector);
            for (auto& x : res.vector) x /= nn;
            res.converged = (resid < tol) || (b < 1e-14);
            if (b < 1e-14) res.residual = 0.0;
            return res;
        }

        beta.push_back(b);
        for (std::size_t k = 0; k < n; ++k) w[k] /= b;
        basis.push_back(w);
    }
    return res;
}

} // namespace qcorr::linalg
