#include <doctest.h>

#include <complex>

#include "qsm/arith.hpp"
#include "qsm/rng.hpp"

using namespace qsm;

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(10007));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(10005));
}

TEST_CASE("reduce_exponent canonical representatives") {
    CHECK(reduce_exponent(7, 5).value() == 2);
    CHECK(reduce_exponent(-1, 3).value() == 2);
    CHECK(reduce_exponent(0, 11).value() == 0);
    CHECK_THROWS_AS(reduce_exponent(1, 6), config_error);
    CHECK_THROWS_AS(reduce_exponent(1, 1), config_error);
}

TEST_CASE("ModInt arithmetic stays reduced") {
    const ModInt a(4, 5), b(3, 5);
    CHECK((a + b).value() == 2);
    CHECK((a - b).value() == 1);
    CHECK((a * b).value() == 2);
    CHECK((-a).value() == 1);
    CHECK(a.pow(0).value() == 1);
    CHECK(a.pow(3).value() == 4); // 64 mod 5
    CHECK((a * a.inverse()).value() == 1);
    CHECK_THROWS_AS(a + ModInt(1, 7), std::domain_error);
}

TEST_CASE("reduce_exponent additivity on random draws") {
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const std::int64_t d = 7;
        const auto a = static_cast<std::int64_t>(rng.below(1000)) - 500;
        const auto b = static_cast<std::int64_t>(rng.below(1000)) - 500;
        const ModInt lhs = reduce_exponent(a, d) + reduce_exponent(b, d);
        CHECK(lhs == reduce_exponent(a + b, d));
    }
}

TEST_CASE("phase_sum_over_group") {
    CHECK(phase_sum_over_group(reduce_exponent(0, 7)) == 7);
    CHECK(phase_sum_over_group(reduce_exponent(3, 7)) == 0);
    CHECK(phase_sum_over_group(reduce_exponent(0, 2)) == 2);
}

TEST_CASE("phase_sum_over_group matches the numeric geometric sum") {
    for (std::int64_t d : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        for (std::int64_t x = 0; x < d; ++x) {
            std::complex<double> acc{};
            for (std::int64_t j = 0; j < d; ++j) acc += root_of_unity(j * x, d);
            const auto expected = static_cast<double>(phase_sum_over_group(reduce_exponent(x, d)));
            CHECK(std::abs(acc - std::complex<double>{expected, 0.0}) < 1e-9);
        }
    }
}

TEST_CASE("PhaseExp to_complex") {
    CHECK(std::abs(PhaseExp(0, 3).to_complex() - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(PhaseExp(2, 3).to_complex() *
                       PhaseExp(1, 3).to_complex() -
                   std::complex<double>{1.0, 0.0}) < 1e-12);
    // quarter and half turns via the raw root helper (d=4 is composite).
    CHECK(std::abs(root_of_unity(1, 4) - std::complex<double>{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(root_of_unity(2, 4) - std::complex<double>{-1.0, 0.0}) < 1e-12);
    Rng rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        const PhaseExp p(static_cast<std::int64_t>(rng.below(11)), 11);
        CHECK(std::abs(std::abs(p.to_complex()) - 1.0) < 1e-12);
    }
    CHECK((PhaseExp(4, 5) * PhaseExp(3, 5)).exponent.value() == 2);
}
