#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "qsm/arith.hpp"
#include "qsm/dense.hpp"
#include "qsm/errors.hpp"
#include "qsm/rng.hpp"
#include "qsm/statevec.hpp"

using namespace qsm;

namespace {

StateVector random_state(int n, std::int64_t d, Rng& rng) {
    std::int64_t size = 1;
    for (int i = 0; i < n; ++i) size *= d;
    std::vector<cdouble> amp(size);
    double norm = 0.0;
    for (cdouble& v : amp) {
        v = {rng.uniform01() - 0.5, rng.uniform01() - 0.5};
        norm += std::norm(v);
    }
    for (cdouble& v : amp) v /= std::sqrt(norm);
    return StateVector::from_amplitudes(n, d, std::move(amp));
}

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
    Eigen::MatrixXcd m(rho.dim(), rho.dim());
    for (std::int64_t r = 0; r < rho.dim(); ++r)
        for (std::int64_t c = 0; c < rho.dim(); ++c) m(r, c) = rho.at(r, c);
    return m;
}

} // namespace

TEST_CASE("basis_state places the single amplitude at the mixed-radix index") {
    const StateVector a = StateVector::basis_state(2, 3, {0, 0});
    CHECK(std::abs(a.amplitude(0) - cdouble{1.0, 0.0}) < 1e-15);

    const StateVector b = StateVector::basis_state(1, 5, {4});
    CHECK(std::abs(b.amplitude(4) - cdouble{1.0, 0.0}) < 1e-15);

    const StateVector c = StateVector::basis_state(3, 3, {1, 0, 2});
    CHECK(std::abs(c.amplitude(1 * 9 + 0 * 3 + 2) - cdouble{1.0, 0.0}) < 1e-15);

    CHECK_THROWS_AS(StateVector::basis_state(1, 5, {5}), std::domain_error);
    CHECK_THROWS_AS(StateVector(2, 4), config_error);
}

TEST_CASE("amplitude cap rejects oversized states") {
    CHECK_THROWS_AS(StateVector(40, 5), config_error);
    CHECK_THROWS_AS(StateVector(4, 7, /*amp_cap=*/100), config_error);
}

TEST_CASE("X^a shifts digits cyclically") {
    StateVector psi = StateVector::basis_state(1, 3, {1});
    psi.apply_x_pow(0, 1);
    CHECK(std::abs(psi.amplitude(2) - cdouble{1.0, 0.0}) < 1e-15);

    psi = StateVector::basis_state(1, 3, {2});
    psi.apply_x_pow(0, 1);
    CHECK(std::abs(psi.amplitude(0) - cdouble{1.0, 0.0}) < 1e-15);

    // X^d = I
    psi = StateVector::basis_state(1, 5, {3});
    psi.apply_x_pow(0, 5);
    CHECK(std::abs(psi.amplitude(3) - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("Z^a multiplies digit s by omega^{as}") {
    StateVector psi = StateVector::basis_state(1, 3, {2});
    psi.apply_z_pow(0, 1);
    CHECK(std::abs(psi.amplitude(2) - root_of_unity(2, 3)) < 1e-15);

    psi = StateVector::basis_state(1, 3, {0});
    psi.apply_z_pow(0, 2);
    CHECK(std::abs(psi.amplitude(0) - cdouble{1.0, 0.0}) < 1e-15);

    // Z^d = I
    psi = StateVector::basis_state(1, 5, {1});
    psi.apply_z_pow(0, 5);
    CHECK(std::abs(psi.amplitude(1) - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("H maps |s> to the omega^{js} superposition") {
    StateVector psi(1, 3);
    psi.apply_h(0);
    for (std::int64_t j = 0; j < 3; ++j)
        CHECK(std::abs(psi.amplitude(j) - cdouble{1.0 / std::sqrt(3.0), 0.0}) < 1e-12);

    psi = StateVector::basis_state(1, 2, {1});
    psi.apply_h(0);
    CHECK(std::abs(psi.amplitude(0) - cdouble{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(std::abs(psi.amplitude(1) + cdouble{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);

    // H Hdagger = I on every basis state, d = 5.
    for (std::int64_t s = 0; s < 5; ++s) {
        StateVector x = StateVector::basis_state(1, 5, {s});
        x.apply_h(0, true);
        x.apply_h(0);
        const StateVector want = StateVector::basis_state(1, 5, {s});
        CHECK(std::abs(x.inner_product(want) - cdouble{1.0, 0.0}) < 1e-10);
    }
}

TEST_CASE("CX adds the control digit into the target") {
    StateVector psi = StateVector::basis_state(2, 3, {1, 2});
    psi.apply_cx(0, 1);
    CHECK(std::abs(psi.amplitude(1 * 3 + 0) - cdouble{1.0, 0.0}) < 1e-15);

    for (std::int64_t r = 0; r < 3; ++r) {
        StateVector zero_ctrl = StateVector::basis_state(2, 3, {0, r});
        zero_ctrl.apply_cx(0, 1);
        CHECK(std::abs(zero_ctrl.amplitude(r) - cdouble{1.0, 0.0}) < 1e-15);
    }

    Rng rng(3);
    StateVector rand = random_state(2, 5, rng);
    StateVector copy = rand;
    rand.apply_cx(1, 0);
    rand.apply_cx(1, 0, /*inverse=*/true);
    CHECK(rand.equal_up_to_global_phase(copy, 1e-12));
    CHECK_THROWS_AS(rand.apply_cx(1, 1), std::domain_error);
}

TEST_CASE("gates preserve the norm on random states") {
    Rng rng(17);
    for (std::int64_t d : {2, 3, 5}) {
        StateVector psi = random_state(3, d, rng);
        psi.apply_h(0);
        psi.apply_cx(0, 2);
        psi.apply_x_pow(1, d - 1);
        psi.apply_z_pow(2, 1);
        psi.apply_h(1, true);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("H X Hdagger = Z and Hdagger Z H = X as dense matrices") {
    for (std::int64_t d : {2, 3, 5, 7}) {
        const Matrix h = mat_h(d), hd = mat_dagger(mat_h(d));
        const Matrix lhs1 = mat_mul(mat_mul(h, mat_x(d)), hd);
        CHECK(mat_max_abs_diff(lhs1, mat_z(d)) < 1e-10);
        const Matrix lhs2 = mat_mul(mat_mul(hd, mat_z(d)), h);
        CHECK(mat_max_abs_diff(lhs2, mat_x(d)) < 1e-10);
    }
}

TEST_CASE("X^a then X^{-a} and Z^a then Z^{-a} are the identity") {
    Rng rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        StateVector psi = random_state(2, 7, rng);
        const StateVector before = psi;
        const auto a = static_cast<std::int64_t>(rng.below(7));
        psi.apply_x_pow(0, a);
        psi.apply_x_pow(0, -a);
        psi.apply_z_pow(1, a);
        psi.apply_z_pow(1, -a);
        CHECK(std::abs(psi.inner_product(before) - cdouble{1.0, 0.0}) < 1e-10);
    }
}

TEST_CASE("H^(x)n on |s>^(x)n puts amplitude omega^{s ||j||}/sqrt(d^n) everywhere") {
    for (std::int64_t d : {2, 3, 5}) {
        for (int n = 1; n <= 3; ++n) {
            for (std::int64_t s = 0; s < d; ++s) {
                StateVector psi =
                    StateVector::basis_state(n, d, std::vector<std::int64_t>(n, s));
                for (int q = 0; q < n; ++q) psi.apply_h(q);
                const double scale = 1.0 / std::sqrt(std::pow(static_cast<double>(d), n));
                for (std::int64_t idx = 0; idx < psi.size(); ++idx) {
                    std::int64_t digit_sum = 0;
                    for (int q = 0; q < n; ++q) digit_sum += psi.digit_at(idx, q);
                    const cdouble want = root_of_unity(s * digit_sum, d) * scale;
                    CHECK(std::abs(psi.amplitude(idx) - want) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("measurement probabilities sum to 1 and collapse renormalizes") {
    Rng rng(31);
    StateVector psi = random_state(3, 5, rng);
    const std::vector<double> probs = psi.outcome_probabilities(1);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(std::abs(total - 1.0) < 1e-10);

    const std::int64_t outcome = psi.measure_z(1, rng);
    CHECK(outcome >= 0);
    CHECK(outcome < 5);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
    const std::vector<double> after = psi.outcome_probabilities(1);
    CHECK(std::abs(after[outcome] - 1.0) < 1e-10);
}

TEST_CASE("measuring a basis state is deterministic") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        StateVector psi = StateVector::basis_state(1, 5, {4});
        CHECK(psi.measure_z(0, rng) == 4);
    }
}

TEST_CASE("uniform superposition measures uniformly") {
    Rng rng(41);
    StateVector base(1, 3);
    base.apply_h(0);
    std::vector<int> counts(3, 0);
    for (int trial = 0; trial < 3000; ++trial) {
        StateVector psi = base;
        counts[psi.measure_z(0, rng)] += 1;
    }
    for (int c : counts) CHECK(std::abs(c - 1000) < 200); // ~6.5 sigma
}

TEST_CASE("GHZ branch enumeration: outcome j collapses every qudit to |j>") {
    // (1/sqrt 3)(|000> + |111> + |222>) measured on qudit 0: three branches,
    // each of probability 1/3, post-state |jjj>.
    std::vector<cdouble> amp(27, cdouble{});
    const double a = 1.0 / std::sqrt(3.0);
    amp[0] = amp[13] = amp[26] = cdouble{a, 0.0};
    for (std::int64_t j = 0; j < 3; ++j) {
        StateVector psi = StateVector::from_amplitudes(3, 3, amp);
        const double p = psi.project_z(0, j);
        CHECK(std::abs(p - 1.0 / 3.0) < 1e-12);
        const StateVector want = StateVector::basis_state(3, 3, {j, j, j});
        CHECK(std::abs(psi.inner_product(want) - cdouble{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("density of basis and superposition states") {
    const StateVector zero = StateVector::basis_state(1, 2, {0});
    const DensityMatrix rho0 = zero.density();
    CHECK(std::abs(rho0.at(0, 0) - cdouble{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(rho0.at(1, 1)) < 1e-12);

    StateVector plus(1, 2);
    plus.apply_h(0);
    const DensityMatrix rho1 = plus.density();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(rho1.at(r, c) - cdouble{0.5, 0.0}) < 1e-12);

    Rng rng(43);
    const DensityMatrix rho2 = random_state(2, 3, rng).density();
    CHECK(std::abs(rho2.trace() - cdouble{1.0, 0.0}) < 1e-10);
}

TEST_CASE("partial trace of a product state recovers the factor") {
    Rng rng(47);
    const StateVector a = random_state(1, 3, rng);
    const StateVector b = random_state(1, 3, rng);
    const DensityMatrix joint = a.tensor(b).density();
    const DensityMatrix first = joint.partial_trace({0});
    CHECK(first.max_abs_diff(a.density()) < 1e-10);
    const DensityMatrix second = joint.partial_trace({1});
    CHECK(second.max_abs_diff(b.density()) < 1e-10);
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
    // Hand expansion: rho^1 = sum_j |j><j| / 3.
    std::vector<cdouble> amp(9, cdouble{});
    const double a = 1.0 / std::sqrt(3.0);
    amp[0] = amp[4] = amp[8] = cdouble{a, 0.0};
    const DensityMatrix rho = StateVector::from_amplitudes(2, 3, amp).density();
    const DensityMatrix reduced = rho.partial_trace({0});
    for (std::int64_t r = 0; r < 3; ++r)
        for (std::int64_t c = 0; c < 3; ++c) {
            const cdouble want = r == c ? cdouble{1.0 / 3.0, 0.0} : cdouble{};
            CHECK(std::abs(reduced.at(r, c) - want) < 1e-10);
        }
}

TEST_CASE("phase-tagged GHZ reduces to I/d for every tag") {
    const std::int64_t d = 5;
    for (std::int64_t m = 0; m < d; ++m) {
        std::vector<cdouble> amp(d * d * d, cdouble{});
        for (std::int64_t j = 0; j < d; ++j)
            amp[j * d * d + j * d + j] =
                root_of_unity(j * m, d) / std::sqrt(static_cast<double>(d));
        const DensityMatrix rho = StateVector::from_amplitudes(3, d, amp).density();
        for (int client = 0; client < 3; ++client) {
            const DensityMatrix reduced = rho.partial_trace({client});
            for (std::int64_t r = 0; r < d; ++r)
                for (std::int64_t c = 0; c < d; ++c) {
                    const cdouble want = r == c ? cdouble{1.0 / static_cast<double>(d), 0.0}
                                                : cdouble{};
                    CHECK(std::abs(reduced.at(r, c) - want) < 1e-10);
                }
        }
    }
}

TEST_CASE("partial trace output is Hermitian, PSD, trace 1") {
    Rng rng(53);
    for (int iter = 0; iter < 10; ++iter) {
        const StateVector psi = random_state(3, 3, rng);
        const DensityMatrix reduced = psi.density().partial_trace({0, 2});
        CHECK(std::abs(reduced.trace() - cdouble{1.0, 0.0}) < 1e-10);
        const Eigen::MatrixXcd m = to_eigen(reduced);
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        CHECK(solver.eigenvalues().minCoeff() > -1e-10);
    }
}

TEST_CASE("global-phase equality") {
    StateVector a = StateVector::basis_state(1, 3, {0});
    std::vector<cdouble> amp(3, cdouble{});
    amp[0] = root_of_unity(2, 3);
    const StateVector c = StateVector::from_amplitudes(1, 3, amp);
    CHECK(a.equal_up_to_global_phase(c, 1e-12));
    CHECK_FALSE(a.equal_up_to_global_phase(StateVector::basis_state(1, 3, {1}), 1e-12));

    StateVector h(1, 3);
    h.apply_h(0);
    std::vector<cdouble> uniform(3, cdouble{1.0 / std::sqrt(3.0), 0.0});
    CHECK(h.equal_up_to_global_phase(StateVector::from_amplitudes(1, 3, uniform), 1e-12));
}

TEST_CASE("permute and drop bookkeeping") {
    // |1,0,2> with qudit order reversed becomes |2,0,1>.
    StateVector psi = StateVector::basis_state(3, 3, {1, 0, 2});
    psi.permute_qudits({2, 1, 0});
    CHECK(std::abs(psi.amplitude(2 * 9 + 0 * 3 + 1) - cdouble{1.0, 0.0}) < 1e-15);

    const double p = psi.project_z(0, 2);
    CHECK(p == doctest::Approx(1.0));
    psi.drop_qudit(0, 2);
    CHECK(psi.num_qudits() == 2);
    CHECK(std::abs(psi.amplitude(0 * 3 + 1) - cdouble{1.0, 0.0}) < 1e-15);

    CHECK_THROWS_AS(psi.project_z(0, 2), std::runtime_error); // zero-probability branch
}
