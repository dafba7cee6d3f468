#pragma once

#include <cstdint>

#include "codedmat/errors.hpp"

namespace codedmat {

/// A field element, stored as its canonical representative in [0, p).
using Fe = std::uint64_t;

/// Arithmetic in GF(p) for a prime modulus p < 2^63.
///
/// Products are formed in 128-bit intermediates, so every operation is exact.
/// The default modulus is the Mersenne prime 2^31 - 1.
class PrimeField {
  public:
    static constexpr Fe kDefaultPrime = 2147483647ULL;  // 2^31 - 1

    explicit PrimeField(Fe p = kDefaultPrime);

    Fe modulus() const { return p_; }

    Fe add(Fe a, Fe b) const {
        Fe s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + (p_ - b); }

    Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }

    Fe mul(Fe a, Fe b) const {
        return static_cast<Fe>(static_cast<unsigned __int128>(a) * b % p_);
    }

    /// a^e by square-and-multiply; pow(0, 0) == 1.
    Fe pow(Fe a, std::uint64_t e) const;

    /// Multiplicative inverse; throws DivisionByZero for a == 0.
    Fe inv(Fe a) const;

    /// Reduces an arbitrary unsigned value into [0, p).
    Fe reduce(std::uint64_t v) const { return v % p_; }

    /// Reduces a signed value into [0, p).
    Fe from_signed(std::int64_t v) const;

    bool operator==(const PrimeField&) const = default;

  private:
    Fe p_;
};

/// Deterministic primality test for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace codedmat
