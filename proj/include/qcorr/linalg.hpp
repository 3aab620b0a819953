// linalg.hpp — Dense complex matrix kernel and a sparse real path for chain
// Hamiltonians.
//
// Dense side: Kronecker products, partial trace / partial transpose, complex
// Hermitian eigenvalues via cyclic Jacobi rotations, Schatten p-norms.
// Sparse side: CSR matrix with matvec plus a Lanczos lowest-eigenpair solver
// with full reorthogonalization and deflation.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qcorr::linalg {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix dagger() const;
    ComplexMatrix symmetrized() const; // (M + M†)/2
    bool is_hermitian(double tol = 1e-12) const;

    cplx trace() const;
    double frobenius_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

// Pauli matrices sigma_1, sigma_2, sigma_3 and the 2x2 identity.
ComplexMatrix pauli(int i);
ComplexMatrix identity2();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

// Transposes the indices of the chosen subsystem of a (da*db)x(da*db) matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t da, std::size_t db,
                                Subsystem which);

// Traces out the chosen subsystem; returns the reduced matrix on the other one.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t da, std::size_t db,
                            Subsystem which);

// Real eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi; the input
// is symmetrized before the solve. Throws std::invalid_argument when the input
// is not Hermitian within 1e-12 entrywise.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Same, also returning eigenvectors as the columns of `vectors`.
void hermitian_eigensystem(const ComplexMatrix& m, std::vector<double>& values,
                           ComplexMatrix& vectors);

// (sum |eig|^p)^(1/p) for Hermitian m; p >= 1.
double schatten_norm(const ComplexMatrix& m, int p);

// ||a - b||_1 (no 1/2 prefactor).
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// -- sparse real path (Hamiltonian assembly only) ---------------------------

class SparseReal {
public:
    explicit SparseReal(std::size_t dim) : dim_(dim), rows_(dim) {}

    std::size_t dim() const { return dim_; }

    void add(std::size_t i, std::size_t j, double v) { rows_[i].push_back({j, v}); }

    void matvec(const double* x, double* y) const;
    void matvec(const std::vector<double>& x, std::vector<double>& y) const {
        matvec(x.data(), y.data());
    }

    ComplexMatrix to_dense() const;

    // Frobenius norm of A*B - B*A, both given sparse.
    static double commutator_norm(const SparseReal& a, const SparseReal& b);

private:
    struct Entry {
        std::size_t col;
        double val;
    };
    std::size_t dim_;
    std::vector<std::vector<Entry>> rows_;
};

struct LanczosResult {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Lowest eigenpair of a real symmetric sparse operator via Lanczos with full
// reorthogonalization. `deflate` holds orthonormal vectors to project out, so
// repeated calls walk up a degenerate ground space.
LanczosResult lanczos_lowest(const SparseReal& h,
                             const std::vector<std::vector<double>>& deflate,
                             std::uint64_t seed, int max_iter = 400, double tol = 1e-10);

// Eigenvalues (and optionally eigenvectors, stored column-wise in z) of a real
// symmetric tridiagonal matrix. d = diagonal, e = off-diagonal (e[i] couples
// i and i+1). Used by Lanczos; exposed for tests.
void tridiag_eigensystem(std::vector<double>& d, std::vector<double> e,
                         std::vector<std::vector<double>>* z);

} // namespace qcorr::linalg
