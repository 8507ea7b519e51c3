#include "qsm/dense.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsm/arith.hpp"

namespace qsm {

Matrix mat_identity(std::int64_t dim) {
    Matrix m(dim);
    for (std::int64_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix mat_mul(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::domain_error("mat_mul: dimension mismatch");
    Matrix out(lhs.dim);
    for (std::int64_t i = 0; i < lhs.dim; ++i) {
        for (std::int64_t k = 0; k < lhs.dim; ++k) {
            const std::complex<double> v = lhs.at(i, k);
            if (v == std::complex<double>{}) continue;
            for (std::int64_t j = 0; j < lhs.dim; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    }
    return out;
}

Matrix mat_dagger(const Matrix& m) {
    Matrix out(m.dim);
    for (std::int64_t i = 0; i < m.dim; ++i)
        for (std::int64_t j = 0; j < m.dim; ++j) out.at(i, j) = std::conj(m.at(j, i));
    return out;
}

Matrix mat_kron(const Matrix& lhs, const Matrix& rhs) {
    Matrix out(lhs.dim * rhs.dim);
    for (std::int64_t i = 0; i < lhs.dim; ++i)
        for (std::int64_t j = 0; j < lhs.dim; ++j) {
            const std::complex<double> v = lhs.at(i, j);
            if (v == std::complex<double>{}) continue;
            for (std::int64_t k = 0; k < rhs.dim; ++k)
                for (std::int64_t l = 0; l < rhs.dim; ++l)
                    out.at(i * rhs.dim + k, j * rhs.dim + l) = v * rhs.at(k, l);
        }
    return out;
}

double mat_max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::domain_error("mat_max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i)
        worst = std::max(worst, std::abs(lhs.a[i] - rhs.a[i]));
    return worst;
}

Matrix mat_x(std::int64_t d) {
    Matrix m(d);
    for (std::int64_t s = 0; s < d; ++s) m.at((s + 1) % d, s) = 1.0;
    return m;
}

Matrix mat_z(std::int64_t d) {
    Matrix m(d);
    for (std::int64_t s = 0; s < d; ++s) m.at(s, s) = root_of_unity(s, d);
    return m;
}

Matrix mat_h(std::int64_t d, bool inverse) {
    Matrix m(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::int64_t j = 0; j < d; ++j)
        for (std::int64_t s = 0; s < d; ++s)
            m.at(j, s) = root_of_unity(inverse ? -j * s : j * s, d) * scale;
    return m;
}

Matrix mat_cx(std::int64_t d, bool inverse) {
    Matrix m(d * d);
    for (std::int64_t s = 0; s < d; ++s)
        for (std::int64_t r = 0; r < d; ++r) {
            const std::int64_t rr = mod_reduce(inverse ? r - s : r + s, d);
            m.at(s * d + rr, s * d + r) = 1.0;
        }
    return m;
}

Matrix mat_pauli1(std::int64_t d, std::int64_t phase, std::int64_t x, std::int64_t z) {
    Matrix m(d);
    for (std::int64_t s = 0; s < d; ++s)
        m.at(mod_reduce(s + x, d), s) = root_of_unity(phase + z * s, d);
    return m;
}

namespace {

std::int64_t phase_exponent_of(std::complex<double> v, std::int64_t d, double tol) {
    if (std::abs(std::abs(v) - 1.0) > tol)
        throw std::runtime_error("pauli_from_matrix: entry is not unimodular");
    const double turns = std::arg(v) / (2.0 * std::numbers::pi) * static_cast<double>(d);
    const auto k = static_cast<std::int64_t>(std::llround(turns));
    if (std::abs(turns - static_cast<double>(k)) > tol * d)
        throw std::runtime_error("pauli_from_matrix: entry phase is not a d-th root of unity");
    return mod_reduce(k, d);
}

} // namespace

PauliDecomposition pauli_from_matrix(std::int64_t d, std::int64_t n_qudits, const Matrix& m,
                                     double tol) {
    if (n_qudits < 1 || n_qudits > 2) throw std::domain_error("pauli_from_matrix: 1 or 2 qudits");
    const std::int64_t dim = n_qudits == 1 ? d : d * d;
    if (m.dim != dim) throw std::domain_error("pauli_from_matrix: dimension mismatch");

    // Column 0 has exactly one nonzero entry, at the row given by the X shift.
    std::int64_t shift_row = -1;
    for (std::int64_t r = 0; r < dim; ++r) {
        if (std::abs(m.at(r, 0)) > tol) {
            if (shift_row >= 0) throw std::runtime_error("pauli_from_matrix: not a Pauli");
            shift_row = r;
        }
    }
    if (shift_row < 0) throw std::runtime_error("pauli_from_matrix: zero column");

    PauliDecomposition out;
    out.x.resize(n_qudits);
    out.z.resize(n_qudits);
    if (n_qudits == 1) {
        out.x[0] = shift_row;
    } else {
        out.x[0] = shift_row / d;
        out.x[1] = shift_row % d;
    }
    out.phase = phase_exponent_of(m.at(shift_row, 0), d, tol);

    // Z exponents from the columns that set one digit to 1.
    for (std::int64_t q = 0; q < n_qudits; ++q) {
        const std::int64_t col = (n_qudits == 1) ? 1 : (q == 0 ? d : 1);
        std::int64_t row;
        if (n_qudits == 1) {
            row = mod_reduce(1 + out.x[0], d);
        } else {
            const std::int64_t s0 = (q == 0) ? 1 : 0;
            const std::int64_t s1 = (q == 0) ? 0 : 1;
            row = mod_reduce(s0 + out.x[0], d) * d + mod_reduce(s1 + out.x[1], d);
        }
        out.z[q] = mod_reduce(phase_exponent_of(m.at(row, col), d, tol) - out.phase, d);
    }

    // Verify the reconstruction entrywise.
    Matrix rebuilt = mat_pauli1(d, out.phase, out.x[0], out.z[0]);
    if (n_qudits == 2) rebuilt = mat_kron(rebuilt, mat_pauli1(d, 0, out.x[1], out.z[1]));
    if (mat_max_abs_diff(rebuilt, m) > tol)
        throw std::runtime_error("pauli_from_matrix: matrix is not a Pauli operator");
    return out;
}

} // namespace qsm
