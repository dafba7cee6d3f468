#include "codedmat/field.hpp"

namespace codedmat {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit inputs with the first twelve prime bases.
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeField::PrimeField(Fe p) : p_(p) {
    if (p < 2 || p >= (1ULL << 63))
        throw InvalidParameter("field modulus must satisfy 2 <= p < 2^63");
    if (!is_prime_u64(p))
        throw InvalidParameter("field modulus " + std::to_string(p) + " is not prime");
}

Fe PrimeField::pow(Fe a, std::uint64_t e) const {
    Fe r = 1 % p_;
    a %= p_;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fe PrimeField::inv(Fe a) const {
    a %= p_;
    if (a == 0) throw DivisionByZero();
    return pow(a, p_ - 2);
}

Fe PrimeField::from_signed(std::int64_t v) const {
    std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<Fe>(r);
}

}  // namespace codedmat
