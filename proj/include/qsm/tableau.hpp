#pragma once

#include <cstdint>
#include <vector>

#include "qsm/dense.hpp"
#include "qsm/rng.hpp"

namespace qsm {

// omega^phase * X^{x_1}Z^{z_1} (x) ... (x) X^{x_n}Z^{z_n}, exponents in Z_d.
// The X factor precedes the Z factor on each qudit (canonical order); phase
// bookkeeping for reordering follows X^k Z^l = omega^{-kl} Z^l X^k.
struct PauliOperator {
    std::int64_t d = 0;
    std::int64_t phase = 0;
    std::vector<std::int64_t> x, z;

    PauliOperator() = default;
    PauliOperator(std::int64_t d, int n);

    int num_qudits() const { return static_cast<int>(x.size()); }

    static PauliOperator identity(std::int64_t d, int n) { return PauliOperator(d, n); }
    // Single-site X^{xe} Z^{ze} with a phase, identity elsewhere.
    static PauliOperator single(std::int64_t d, int n, int qudit, std::int64_t xe, std::int64_t ze,
                                std::int64_t phase = 0);

    bool is_identity() const;
    bool operator==(const PauliOperator& o) const = default;
};

// Canonical product p*q; exponent vectors add, the phase picks up the
// correction from moving q's X block left past p's Z block.
PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);

// p^a via the closed form (omega^f X^x Z^z)^a = omega^{af + a(a-1)/2 <x,z>} X^{ax} Z^{az}.
PauliOperator pauli_pow(const PauliOperator& p, std::int64_t a);

// sigma with p q = omega^sigma q p; zero iff the operators commute.
std::int64_t commutation_exponent(const PauliOperator& p, const PauliOperator& q);
bool commutes(const PauliOperator& p, const PauliOperator& q);

// Dense matrix of a 1- or 2-qudit Pauli (oracle/test bridge).
Matrix pauli_to_matrix(const PauliOperator& p);

// Conjugation images of the Pauli generators under H, H^-1, CX, CX^-1, with
// exponents stored as small signed integers valid for every odd prime d.
// Derived once at startup by brute-force dense-matrix conjugation at d = 3
// and d = 5; instantiated per runtime d and spot-validated symbolically.
struct PauliPattern {
    std::int64_t phase = 0;
    std::vector<std::int64_t> x, z;
};

struct CliffordRules {
    PauliPattern h_x, h_z;         // images of X, Z under H . H^dagger
    PauliPattern hinv_x, hinv_z;   // ... under H^dagger . H
    PauliPattern cx_xc, cx_zc, cx_xt, cx_zt;         // control qudit first
    PauliPattern cxinv_xc, cxinv_zc, cxinv_xt, cxinv_zt;
};

const CliffordRules& clifford_rules();

// Exact integer spot checks of the conjugation rules for a runtime dimension.
// Cached per d; throws std::logic_error on mismatch.
void validate_clifford_rules(std::int64_t d);

// n commuting, independent stabilizer generators over odd prime d. Gates act
// by conjugating every generator; measurement collapses by row reduction.
class StabilizerTableau {
  public:
    StabilizerTableau(std::int64_t d, std::vector<PauliOperator> generators);

    // Stabilizer of |0...0>: generators {Z_i}.
    static StabilizerTableau zero_state(int n, std::int64_t d);
    // Stabilizer of the n-qudit GHZ state: {X^(x)n} u {Z_i Z_{i+1}^{-1}}.
    static StabilizerTableau ghz(int n, std::int64_t d);

    int num_qudits() const { return n_; }
    std::int64_t qudit_dim() const { return d_; }
    const std::vector<PauliOperator>& generators() const { return gens_; }

    void apply_h(int target, bool inverse = false);
    void apply_cx(int control, int target, bool inverse = false);
    void apply_x_pow(int target, std::int64_t a);
    void apply_z_pow(int target, std::int64_t a);

    std::int64_t measure_z(int target, Rng& rng);

    // Pairwise commutation plus full row rank over Z_d; test/debug hook.
    void check_invariants() const;

  private:
    std::int64_t deterministic_outcome(int target) const;

    std::int64_t d_ = 0;
    int n_ = 0;
    std::vector<PauliOperator> gens_;
};

} // namespace qsm
