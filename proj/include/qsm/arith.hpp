#pragma once

#include <complex>
#include <cstdint>

#include "qsm/errors.hpp"

namespace qsm {

// Trial division; d is desk-scale (<= ~1e5) everywhere in this project.
bool is_prime(std::int64_t n);

// Canonical representative of x modulo d, in [0, d). Works for negative x.
std::int64_t mod_reduce(std::int64_t x, std::int64_t d);

// a^e mod d for e >= 0.
std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t d);

// Multiplicative inverse mod prime d (Fermat). a must be nonzero mod d.
std::int64_t mod_inverse(std::int64_t a, std::int64_t d);

// Element of Z_d for prime d. All arithmetic reduces mod d; the modulus is
// validated prime once at construction.
class ModInt {
  public:
    ModInt(std::int64_t value, std::int64_t modulus);

    std::int64_t value() const { return value_; }
    std::int64_t modulus() const { return modulus_; }

    ModInt operator+(const ModInt& o) const { return with(value_ + other(o)); }
    ModInt operator-(const ModInt& o) const { return with(value_ - other(o)); }
    ModInt operator*(const ModInt& o) const { return with(value_ * other(o)); }
    ModInt operator-() const { return with(-value_); }
    ModInt pow(std::int64_t e) const { return unchecked(mod_pow(value_, e, modulus_), modulus_); }
    ModInt inverse() const { return unchecked(mod_inverse(value_, modulus_), modulus_); }

    bool operator==(const ModInt& o) const { return value_ == o.value_ && modulus_ == o.modulus_; }
    bool operator!=(const ModInt& o) const { return !(*this == o); }

  private:
    static ModInt unchecked(std::int64_t v, std::int64_t d);
    ModInt with(std::int64_t raw) const { return unchecked(mod_reduce(raw, modulus_), modulus_); }
    std::int64_t other(const ModInt& o) const;

    std::int64_t value_;
    std::int64_t modulus_;
};

// x mod d as a ModInt; throws config_error when d is not prime.
ModInt reduce_exponent(std::int64_t x, std::int64_t d);

// Sum_{j=0}^{d-1} omega^{jx} evaluated exactly: d when x = 0 mod d, else 0.
std::int64_t phase_sum_over_group(const ModInt& x);

// Symbolic power of omega = e^{i 2 pi / d}. Composition adds exponents mod d;
// conversion to a floating complex number happens only at the state-vector
// boundary.
struct PhaseExp {
    ModInt exponent;

    explicit PhaseExp(ModInt e) : exponent(e) {}
    PhaseExp(std::int64_t e, std::int64_t d) : exponent(reduce_exponent(e, d)) {}

    PhaseExp operator*(const PhaseExp& o) const { return PhaseExp(exponent + o.exponent); }
    bool operator==(const PhaseExp& o) const { return exponent == o.exponent; }

    std::complex<double> to_complex() const;
};

// e^{i 2 pi k / d} for integer k (not necessarily reduced).
std::complex<double> root_of_unity(std::int64_t k, std::int64_t d);

} // namespace qsm
