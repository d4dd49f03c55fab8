#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chindex {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Raised when a discrete logarithm is requested for an element outside the
/// cyclic subgroup generated by the base.
class NotInSubgroup : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An odd prime used as the residue characteristic of a finite field F_ell.
class PrimeModulus {
  public:
    explicit PrimeModulus(u64 ell);

    u64 value() const { return ell_; }
    operator u64() const { return ell_; }

  private:
    u64 ell_;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exponent, u64 modulus);

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, valid on the whole 64-bit range.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs in ascending order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

std::vector<u64> prime_divisors(u64 n);

/// p-adic valuation; returns `cap` for x == 0.
unsigned valuation(u64 x, u64 p, unsigned cap = 64);

u64 ipow(u64 base, unsigned exponent);

u64 euler_phi(u64 n);

/// All primes ell == 1 (mod modulus) with ell <= bound, ascending.
std::vector<u64> primes_in_progression(u64 modulus, u64 bound);

/// The first `count` primes ell == 1 (mod modulus) with ell <= bound.
std::vector<u64> first_primes_in_progression(u64 modulus, u64 bound, std::size_t count);

/// Multiplicative order of x modulo m, given the prime factorization of a
/// multiple of that order (typically the group exponent).
u64 multiplicative_order(u64 x, u64 m, u64 group_order);

/// Smallest positive primitive root modulo the prime ell.
u64 primitive_root(u64 ell);

/// Discrete logarithm of w to the base g, where g has multiplicative order
/// exactly p^n modulo ell. Pohlig-Hellman descent over the n digits, with a
/// baby-step giant-step solve (or a table scan for small p) at each digit.
u64 dlog_prime_power(u64 ell, u64 g, u64 w, u64 p, unsigned n);

/// Reusable form of dlog_prime_power: the per-digit lookup tables are built
/// once and shared by every call.
class PrimePowerLog {
  public:
    PrimePowerLog(u64 ell, u64 g, u64 p, unsigned n);

    u64 operator()(u64 w) const;

    u64 modulus() const { return ell_; }
    u64 base() const { return g_; }
    u64 order() const { return order_; }

  private:
    u64 solve_digit(u64 h) const;

    u64 ell_;
    u64 g_;
    u64 p_;
    unsigned n_;
    u64 order_;
    u64 gamma_;             // g^(p^(n-1)), order p
    u64 giant_;             // gamma^(-m)
    u64 g_inv_;
    u64 m_;                 // baby-step count
    std::vector<std::pair<u64, u64>> baby_;  // (gamma^j, j), sorted by value
};

}  // namespace chindex
