#include "qsm/arith.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsm {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t f = 3; f * f <= n; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

std::int64_t mod_reduce(std::int64_t x, std::int64_t d) {
    std::int64_t r = x % d;
    return r < 0 ? r + d : r;
}

std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t d) {
    if (e < 0) throw std::domain_error("mod_pow: negative exponent");
    std::int64_t base = mod_reduce(a, d);
    std::int64_t acc = 1 % d;
    while (e > 0) {
        if (e & 1) acc = acc * base % d;
        base = base * base % d;
        e >>= 1;
    }
    return acc;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t d) {
    if (mod_reduce(a, d) == 0) throw std::domain_error("mod_inverse: zero has no inverse");
    return mod_pow(a, d - 2, d);
}

ModInt::ModInt(std::int64_t value, std::int64_t modulus) {
    if (!is_prime(modulus))
        throw config_error("ModInt: modulus " + std::to_string(modulus) + " is not prime");
    modulus_ = modulus;
    value_ = mod_reduce(value, modulus);
}

ModInt ModInt::unchecked(std::int64_t v, std::int64_t d) {
    ModInt m(0, 2);
    m.value_ = v;
    m.modulus_ = d;
    return m;
}

std::int64_t ModInt::other(const ModInt& o) const {
    if (o.modulus_ != modulus_) throw std::domain_error("ModInt: mismatched moduli");
    return o.value_;
}

ModInt reduce_exponent(std::int64_t x, std::int64_t d) {
    return ModInt(x, d);
}

std::int64_t phase_sum_over_group(const ModInt& x) {
    return x.value() == 0 ? x.modulus() : 0;
}

std::complex<double> root_of_unity(std::int64_t k, std::int64_t d) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod_reduce(k, d)) /
                         static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> PhaseExp::to_complex() const {
    return root_of_unity(exponent.value(), exponent.modulus());
}

} // namespace qsm
