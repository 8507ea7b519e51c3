#include <doctest.h>

#include <cmath>

#include "qsm/arith.hpp"
#include "qsm/dense.hpp"
#include "qsm/errors.hpp"
#include "qsm/rng.hpp"
#include "qsm/stats.hpp"
#include "qsm/statevec.hpp"
#include "qsm/tableau.hpp"

using namespace qsm;

namespace {

PauliOperator pauli1(std::int64_t d, std::int64_t x, std::int64_t z, std::int64_t phase = 0) {
    return PauliOperator::single(d, 1, 0, x, z, phase);
}

// Brute-force reference: conjugate the dense matrix and read the Pauli back.
PauliOperator conj_oracle(const Matrix& u, const PauliOperator& p) {
    const Matrix m = mat_mul(mat_mul(u, pauli_to_matrix(p)), mat_dagger(u));
    const PauliDecomposition dec = pauli_from_matrix(p.d, p.num_qudits(), m);
    PauliOperator out(p.d, p.num_qudits());
    out.phase = dec.phase;
    out.x = dec.x;
    out.z = dec.z;
    return out;
}

} // namespace

TEST_CASE("multiply: ordered product X*Z has no phase correction") {
    const std::int64_t d = 3;
    const PauliOperator xz = multiply(pauli1(d, 1, 0), pauli1(d, 0, 1));
    CHECK(xz.phase == 0);
    CHECK(xz.x[0] == 1);
    CHECK(xz.z[0] == 1);
}

TEST_CASE("multiply: Z*X reorders with the omega^{kl} correction; matrix oracle agrees") {
    // Z X = omega X Z for every d (the relation X^k Z^l = omega^{-kl} Z^l X^k
    // with k = l = 1), so the canonical form carries phase exponent 1.
    for (std::int64_t d : {3, 5, 7}) {
        const PauliOperator zx = multiply(pauli1(d, 0, 1), pauli1(d, 1, 0));
        CHECK(zx.phase == 1);
        CHECK(zx.x[0] == 1);
        CHECK(zx.z[0] == 1);
        const Matrix want = mat_mul(mat_z(d), mat_x(d));
        CHECK(mat_max_abs_diff(pauli_to_matrix(zx), want) < 1e-10);
    }
}

TEST_CASE("multiply matches dense matrix multiplication exhaustively, d=3") {
    const std::int64_t d = 3;
    for (std::int64_t x1 = 0; x1 < d; ++x1)
        for (std::int64_t z1 = 0; z1 < d; ++z1)
            for (std::int64_t x2 = 0; x2 < d; ++x2)
                for (std::int64_t z2 = 0; z2 < d; ++z2) {
                    const PauliOperator prod = multiply(pauli1(d, x1, z1), pauli1(d, x2, z2));
                    const Matrix want =
                        mat_mul(pauli_to_matrix(pauli1(d, x1, z1)), pauli_to_matrix(pauli1(d, x2, z2)));
                    CHECK(mat_max_abs_diff(pauli_to_matrix(prod), want) < 1e-10);
                }
}

TEST_CASE("mismatched operands are rejected") {
    CHECK_THROWS_AS(multiply(pauli1(3, 1, 0), pauli1(5, 1, 0)), std::domain_error);
    CHECK_THROWS_AS(multiply(PauliOperator(3, 2), PauliOperator(3, 1)), std::domain_error);
}

TEST_CASE("p * p^{d-1} is the identity with phase 0") {
    Rng rng(61);
    const std::int64_t d = 5;
    for (int iter = 0; iter < 50; ++iter) {
        PauliOperator p(d, 2);
        p.phase = static_cast<std::int64_t>(rng.below(d));
        for (int q = 0; q < 2; ++q) {
            p.x[q] = static_cast<std::int64_t>(rng.below(d));
            p.z[q] = static_cast<std::int64_t>(rng.below(d));
        }
        CHECK(multiply(p, pauli_pow(p, d - 1)).is_identity());
    }
}

TEST_CASE("pauli_pow matches repeated multiplication") {
    Rng rng(67);
    const std::int64_t d = 7;
    for (int iter = 0; iter < 30; ++iter) {
        PauliOperator p(d, 2);
        p.phase = static_cast<std::int64_t>(rng.below(d));
        for (int q = 0; q < 2; ++q) {
            p.x[q] = static_cast<std::int64_t>(rng.below(d));
            p.z[q] = static_cast<std::int64_t>(rng.below(d));
        }
        PauliOperator acc = PauliOperator::identity(d, 2);
        for (std::int64_t a = 0; a < d; ++a) {
            CHECK(pauli_pow(p, a) == acc);
            acc = multiply(acc, p);
        }
    }
}

TEST_CASE("commutation exponent matches the symplectic form and the matrices") {
    Rng rng(71);
    const std::int64_t d = 3;
    for (int iter = 0; iter < 40; ++iter) {
        PauliOperator p(d, 2), q(d, 2);
        for (int i = 0; i < 2; ++i) {
            p.x[i] = static_cast<std::int64_t>(rng.below(d));
            p.z[i] = static_cast<std::int64_t>(rng.below(d));
            q.x[i] = static_cast<std::int64_t>(rng.below(d));
            q.z[i] = static_cast<std::int64_t>(rng.below(d));
        }
        const std::int64_t sigma = commutation_exponent(p, q);
        // p q = omega^sigma q p as matrices.
        Matrix lhs = mat_mul(pauli_to_matrix(p), pauli_to_matrix(q));
        Matrix rhs = mat_mul(pauli_to_matrix(q), pauli_to_matrix(p));
        for (auto& v : rhs.a) v *= root_of_unity(sigma, d);
        CHECK(mat_max_abs_diff(lhs, rhs) < 1e-10);

        std::int64_t form = 0;
        for (int i = 0; i < 2; ++i) form += p.x[i] * q.z[i] - q.x[i] * p.z[i];
        CHECK((commutes(p, q)) == (mod_reduce(form, d) == 0));
    }
}

TEST_CASE("H conjugation: X -> Z, Z -> X^{d-1}, identity fixed") {
    for (std::int64_t d : {3, 5}) {
        const Matrix h = mat_h(d);

        const PauliOperator img_x = conj_oracle(h, pauli1(d, 1, 0));
        CHECK(img_x.phase == 0);
        CHECK(img_x.x[0] == 0);
        CHECK(img_x.z[0] == 1);

        const PauliOperator img_z = conj_oracle(h, pauli1(d, 0, 1));
        CHECK(img_z.phase == 0);
        CHECK(img_z.x[0] == d - 1);
        CHECK(img_z.z[0] == 0);

        const PauliOperator img_i = conj_oracle(h, pauli1(d, 0, 0));
        CHECK(img_i.is_identity());
    }
}

TEST_CASE("tableau H and CX updates agree with dense conjugation exhaustively") {
    for (std::int64_t d : {3, 5}) {
        // Single-qudit H and Hdagger over all (x, z).
        for (bool inverse : {false, true}) {
            const Matrix u = mat_h(d, inverse);
            for (std::int64_t x = 0; x < d; ++x) {
                for (std::int64_t z = 0; z < d; ++z) {
                    std::vector<PauliOperator> gens{pauli1(d, x, z, 0)};
                    if (x == 0 && z == 0) continue; // identity row is not a valid lone generator
                    StabilizerTableau t(d, gens);
                    t.apply_h(0, inverse);
                    CHECK(t.generators()[0] == conj_oracle(u, pauli1(d, x, z, 0)));
                }
            }
        }
        // Two-qudit CX and CX^-1 over all (xc, zc, xt, zt).
        for (bool inverse : {false, true}) {
            const Matrix u = mat_cx(d, inverse);
            for (std::int64_t xc = 0; xc < d; ++xc)
                for (std::int64_t zc = 0; zc < d; ++zc)
                    for (std::int64_t xt = 0; xt < d; ++xt)
                        for (std::int64_t zt = 0; zt < d; ++zt) {
                            if (xc == 0 && zc == 0 && xt == 0 && zt == 0) continue;
                            PauliOperator p(d, 2);
                            p.x = {xc, xt};
                            p.z = {zc, zt};
                            PauliOperator other(d, 2);
                            // A second row keeping the tableau shape legal.
                            other.x = {mod_reduce(xc + 1, d), xt};
                            other.z = {zc, zt};
                            StabilizerTableau t(d, {p, other});
                            t.apply_cx(0, 1, inverse);
                            CHECK(t.generators()[0] == conj_oracle(u, p));
                        }
        }
    }
}

TEST_CASE("CX images: X_c -> X X, Z_t -> Z^{-1} Z, Z_c fixed") {
    const std::int64_t d = 3;
    const Matrix u = mat_cx(d);

    PauliOperator xc(d, 2);
    xc.x = {1, 0};
    const PauliOperator img1 = conj_oracle(u, xc);
    CHECK(img1.x == std::vector<std::int64_t>{1, 1});
    CHECK(img1.z == std::vector<std::int64_t>{0, 0});
    CHECK(img1.phase == 0);

    PauliOperator zt(d, 2);
    zt.z = {0, 1};
    const PauliOperator img2 = conj_oracle(u, zt);
    CHECK(img2.x == std::vector<std::int64_t>{0, 0});
    CHECK(img2.z == std::vector<std::int64_t>{d - 1, 1});
    CHECK(img2.phase == 0);

    PauliOperator zc(d, 2);
    zc.z = {1, 0};
    CHECK(conj_oracle(u, zc) == zc);
}

TEST_CASE("Pauli-gate conjugation of the tableau matches the oracle") {
    Rng rng(73);
    const std::int64_t d = 5;
    for (int iter = 0; iter < 20; ++iter) {
        PauliOperator p(d, 1);
        p.x[0] = static_cast<std::int64_t>(rng.below(d));
        p.z[0] = static_cast<std::int64_t>(rng.below(d));
        if (p.x[0] == 0 && p.z[0] == 0) p.x[0] = 1;
        const auto a = static_cast<std::int64_t>(rng.below(d));

        StabilizerTableau tz(d, {p});
        tz.apply_z_pow(0, a);
        Matrix uz = mat_pauli1(d, 0, 0, a);
        CHECK(tz.generators()[0] == conj_oracle(uz, p));

        StabilizerTableau tx(d, {p});
        tx.apply_x_pow(0, a);
        Matrix ux = mat_pauli1(d, 0, a, 0);
        CHECK(tx.generators()[0] == conj_oracle(ux, p));
    }
}

TEST_CASE("ghz tableau generators") {
    const StabilizerTableau t = StabilizerTableau::ghz(2, 3);
    CHECK(t.generators()[0].x == std::vector<std::int64_t>{1, 1});
    CHECK(t.generators()[0].z == std::vector<std::int64_t>{0, 0});
    CHECK(t.generators()[1].x == std::vector<std::int64_t>{0, 0});
    CHECK(t.generators()[1].z == std::vector<std::int64_t>{1, 2});

    // Both generators fix the dense Bell vector.
    StateVector bell(2, 3);
    bell.apply_h(0);
    bell.apply_cx(0, 1);
    for (const PauliOperator& g : t.generators()) {
        const Matrix m = pauli_to_matrix(g);
        std::vector<cdouble> out(9, cdouble{});
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 9; ++c) out[r] += m.at(r, c) * bell.amplitude(c);
        for (int r = 0; r < 9; ++r) CHECK(std::abs(out[r] - bell.amplitude(r)) < 1e-10);
    }

    const StabilizerTableau single = StabilizerTableau::ghz(1, 3);
    CHECK(single.generators().size() == 1);
    CHECK(single.generators()[0].x == std::vector<std::int64_t>{1});

    StabilizerTableau big = StabilizerTableau::ghz(3, 5);
    big.check_invariants();

    CHECK_THROWS_AS(StabilizerTableau::ghz(2, 2), unsupported_error);
    CHECK_THROWS_AS(StabilizerTableau::ghz(2, 9), config_error);
}

TEST_CASE("invariants hold through gates and measurements") {
    Rng rng(79);
    StabilizerTableau t = StabilizerTableau::ghz(4, 5);
    t.apply_z_pow(0, 3);
    t.check_invariants();
    for (int q = 0; q < 4; ++q) t.apply_h(q);
    t.check_invariants();
    t.apply_cx(1, 2);
    t.check_invariants();
    for (int q = 0; q < 4; ++q) {
        t.measure_z(q, rng);
        t.check_invariants();
    }
}

TEST_CASE("measurement on the zero-state tableau is deterministic") {
    Rng rng(83);
    StabilizerTableau t = StabilizerTableau::zero_state(3, 7);
    for (int q = 0; q < 3; ++q) CHECK(t.measure_z(q, rng) == 0);
}

TEST_CASE("GHZ tableau after per-qudit H measures uniformly") {
    Rng rng(89);
    const std::int64_t d = 3;
    std::vector<std::int64_t> counts(d, 0);
    for (int trial = 0; trial < 3000; ++trial) {
        StabilizerTableau t = StabilizerTableau::ghz(2, d);
        for (int q = 0; q < 2; ++q) t.apply_h(q);
        counts[t.measure_z(0, rng)] += 1;
    }
    CHECK(chi_square_uniform_pvalue(counts) > 0.001);
}

TEST_CASE("Bell tableau measures equal outcomes on both qudits") {
    Rng rng(97);
    for (int trial = 0; trial < 200; ++trial) {
        StabilizerTableau t = StabilizerTableau::ghz(2, 3);
        const std::int64_t a = t.measure_z(0, rng);
        const std::int64_t b = t.measure_z(1, rng);
        CHECK(a == b);
    }
}

TEST_CASE("tableau vs statevector Bell sampling agree in law") {
    // Oracle cross-check of the same measurement on the dense Bell state.
    Rng rng(101);
    const std::int64_t d = 3;
    std::vector<std::int64_t> tableau_counts(d, 0), dense_counts(d, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        StabilizerTableau t = StabilizerTableau::ghz(2, d);
        tableau_counts[t.measure_z(0, rng)] += 1;

        StateVector bell(2, d);
        bell.apply_h(0);
        bell.apply_cx(0, 1);
        const std::int64_t first = bell.measure_z(0, rng);
        CHECK(bell.measure_z(1, rng) == first);
        dense_counts[first] += 1;
    }
    CHECK(chi_square_two_sample_pvalue(tableau_counts, dense_counts) > 0.001);
}
