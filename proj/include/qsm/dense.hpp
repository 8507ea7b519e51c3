#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qsm {

// Small dense complex matrices, used as the brute-force oracle for Clifford
// conjugation rules and by the algebra tests. Never used on more than a
// couple of qudits.
struct Matrix {
    std::int64_t dim = 0;
    std::vector<std::complex<double>> a; // row-major, dim x dim

    Matrix() = default;
    explicit Matrix(std::int64_t n) : dim(n), a(static_cast<std::size_t>(n) * n) {}

    std::complex<double>& at(std::int64_t r, std::int64_t c) { return a[r * dim + c]; }
    const std::complex<double>& at(std::int64_t r, std::int64_t c) const { return a[r * dim + c]; }
};

Matrix mat_identity(std::int64_t dim);
Matrix mat_mul(const Matrix& lhs, const Matrix& rhs);
Matrix mat_dagger(const Matrix& m);
Matrix mat_kron(const Matrix& lhs, const Matrix& rhs);
double mat_max_abs_diff(const Matrix& lhs, const Matrix& rhs);

// Single-qudit gates as d x d matrices.
Matrix mat_x(std::int64_t d);
Matrix mat_z(std::int64_t d);
Matrix mat_h(std::int64_t d, bool inverse = false);
// CX on two qudits, control first in the tensor order (d^2 x d^2).
Matrix mat_cx(std::int64_t d, bool inverse = false);

// omega^phase X^{x} Z^{z} on one qudit.
Matrix mat_pauli1(std::int64_t d, std::int64_t phase, std::int64_t x, std::int64_t z);

// Recover (phase, x, z) exponents from a matrix known to be a single- or
// two-qudit Pauli; throws std::runtime_error when the matrix is not one
// (within tol). Exponent vectors have one entry per qudit.
struct PauliDecomposition {
    std::int64_t phase;
    std::vector<std::int64_t> x, z;
};
PauliDecomposition pauli_from_matrix(std::int64_t d, std::int64_t n_qudits, const Matrix& m,
                                     double tol = 1e-9);

} // namespace qsm
