#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsm/rng.hpp"

namespace qsm {

using cdouble = std::complex<double>;

// Density operator over an explicit list of subsystem dimensions. Immutable
// after construction; construction checks hermiticity and unit trace.
class DensityMatrix {
  public:
    DensityMatrix(std::vector<std::int64_t> dims, std::vector<cdouble> entries);

    const std::vector<std::int64_t>& dims() const { return dims_; }
    std::int64_t dim() const { return dim_; }
    const cdouble& at(std::int64_t r, std::int64_t c) const { return entries_[r * dim_ + c]; }
    const std::vector<cdouble>& entries() const { return entries_; }

    cdouble trace() const;
    double max_abs_diff(const DensityMatrix& other) const;

    // Reduced state on the listed subsystems (indices ascending).
    DensityMatrix partial_trace(const std::vector<int>& keep) const;

  private:
    std::vector<std::int64_t> dims_;
    std::int64_t dim_;
    std::vector<cdouble> entries_;
};

// Dense amplitudes of n qudits of prime dimension d, indexed by base-d digit
// strings with qudit 0 as the most significant digit. The exact oracle
// backend: every gate is a strided in-place pass, never an explicit matrix.
class StateVector {
  public:
    static constexpr std::int64_t kDefaultAmpCap = std::int64_t{1} << 26;

    // |0...0> on n qudits.
    StateVector(int n, std::int64_t d, std::int64_t amp_cap = kDefaultAmpCap);

    static StateVector basis_state(int n, std::int64_t d, const std::vector<std::int64_t>& digits,
                                   std::int64_t amp_cap = kDefaultAmpCap);

    static StateVector from_amplitudes(int n, std::int64_t d, std::vector<cdouble> amplitudes,
                                       std::int64_t amp_cap = kDefaultAmpCap);

    int num_qudits() const { return n_; }
    std::int64_t qudit_dim() const { return d_; }
    std::int64_t size() const { return static_cast<std::int64_t>(amp_.size()); }
    const std::vector<cdouble>& amplitudes() const { return amp_; }
    cdouble amplitude(std::int64_t index) const { return amp_[index]; }

    // X^a on `target`: digit s -> s + a (mod d).
    void apply_x_pow(int target, std::int64_t a);
    // Z^a on `target`: amplitude of digit s gains omega^{a s}.
    void apply_z_pow(int target, std::int64_t a);
    // Generalized Hadamard |s> -> (1/sqrt d) sum_j omega^{js} |j> (conjugate
    // exponent when inverse).
    void apply_h(int target, bool inverse = false);
    // |s>|r> -> |s>|r+s> (r-s when inverse).
    void apply_cx(int control, int target, bool inverse = false);

    // Squared-amplitude mass of each digit value at `target`.
    std::vector<double> outcome_probabilities(int target) const;

    // Projective Z-basis measurement; collapses and renormalizes.
    std::int64_t measure_z(int target, Rng& rng);

    // Force outcome `outcome` at `target`; returns the branch probability and
    // collapses. Throws when the branch has (numerically) zero mass.
    double project_z(int target, std::int64_t outcome);

    // Remove a qudit that has been collapsed onto `digit`.
    void drop_qudit(int target, std::int64_t digit);

    // Reorder qudits: new slot i holds what was at source_of[i].
    void permute_qudits(const std::vector<int>& source_of);

    // this (x) other, qudits of `other` appended after ours.
    StateVector tensor(const StateVector& other) const;

    cdouble inner_product(const StateVector& other) const; // <this|other>
    double norm() const;
    bool equal_up_to_global_phase(const StateVector& other, double tol) const;

    DensityMatrix density() const;

    std::int64_t digit_at(std::int64_t index, int qudit) const {
        return index / stride(qudit) % d_;
    }

  private:
    StateVector() = default;
    std::int64_t stride(int qudit) const; // d^(n-1-qudit)
    void check_target(int target) const;
    void collapse_to(int target, std::int64_t outcome, double prob);

    int n_ = 0;
    std::int64_t d_ = 0;
    std::int64_t amp_cap_ = kDefaultAmpCap;
    std::vector<cdouble> amp_;
};

} // namespace qsm
