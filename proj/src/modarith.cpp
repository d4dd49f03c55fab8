#include "chindex/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chindex {

PrimeModulus::PrimeModulus(u64 ell) : ell_(ell) {
    if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("modulus " + std::to_string(ell) + " is not an odd prime");
}

u64 pow_mod(u64 base, u64 exponent, u64 modulus) {
    if (modulus == 1) return 0;
    u64 result = 1;
    base %= modulus;
    while (exponent) {
        if (exponent & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        std::tie(t, new_t) = std::pair<__int128, __int128>(new_t, t - q * new_t);
        std::tie(r, new_r) = std::pair<__int128, __int128>(new_r, r - q * new_r);
    }
    if (r != 1) throw std::domain_error(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact below 3.3e24.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<u64> primes;
    for (u64 q = 2; q < 1000 && q * q <= n; ++q) {
        while (n % q == 0) {
            primes.push_back(q);
            n /= q;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, unsigned>> result;
    for (u64 q : primes) {
        if (!result.empty() && result.back().first == q)
            ++result.back().second;
        else
            result.emplace_back(q, 1);
    }
    return result;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto [q, e] : factorize(n)) out.push_back(q);
    return out;
}

unsigned valuation(u64 x, u64 p, unsigned cap) {
    if (x == 0) return cap;
    unsigned v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

u64 ipow(u64 base, unsigned exponent) {
    u64 r = 1;
    while (exponent--) r *= base;
    return r;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto [q, e] : factorize(n)) phi = phi / q * (q - 1);
    return phi;
}

std::vector<u64> primes_in_progression(u64 modulus, u64 bound) {
    if (modulus == 0) throw std::invalid_argument("modulus must be positive");
    std::vector<u64> out;
    if (bound < 2) return out;
    // Dense progressions are cheaper to sieve than to test one by one.
    if (bound / modulus > 64 && bound <= (u64{1} << 32)) {
        std::vector<bool> composite(bound + 1, false);
        for (u64 i = 2; i * i <= bound; ++i)
            if (!composite[i])
                for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
        for (u64 x = 2; x <= bound; ++x)
            if (!composite[x] && x % modulus == 1 % modulus) out.push_back(x);
        return out;
    }
    for (u64 x = modulus + 1; x <= bound && x > modulus; x += modulus)
        if (is_prime(x)) out.push_back(x);
    return out;
}

std::vector<u64> first_primes_in_progression(u64 modulus, u64 bound, std::size_t count) {
    if (modulus == 0) throw std::invalid_argument("modulus must be positive");
    std::vector<u64> out;
    for (u64 x = modulus + 1; out.size() < count && x <= bound && x > modulus; x += modulus)
        if (is_prime(x)) out.push_back(x);
    return out;
}

u64 multiplicative_order(u64 x, u64 m, u64 group_order) {
    if (std::gcd(x % m, m) != 1) throw std::domain_error("element is not a unit");
    u64 order = group_order;
    for (auto [q, e] : factorize(group_order)) {
        for (unsigned i = 0; i < e; ++i) {
            if (pow_mod(x, order / q, m) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

u64 primitive_root(u64 ell) {
    if (ell == 2) return 1;
    const auto qs = prime_divisors(ell - 1);
    for (u64 g = 2; g < ell; ++g) {
        if (std::all_of(qs.begin(), qs.end(), [&](u64 q) { return pow_mod(g, (ell - 1) / q, ell) != 1; }))
            return g;
    }
    throw std::domain_error("no primitive root modulo " + std::to_string(ell));
}

PrimePowerLog::PrimePowerLog(u64 ell, u64 g, u64 p, unsigned n)
    : ell_(ell), g_(g % ell), p_(p), n_(n), order_(ipow(p, n)) {
    if (n == 0) throw std::invalid_argument("subgroup exponent must be at least 1");
    if (pow_mod(g_, order_, ell) != 1 || pow_mod(g_, order_ / p, ell) == 1)
        throw std::invalid_argument("base does not have order exactly p^n");
    gamma_ = pow_mod(g_, order_ / p, ell);
    m_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p))));
    baby_.reserve(m_);
    u64 cur = 1;
    for (u64 j = 0; j < m_; ++j) {
        baby_.emplace_back(cur, j);
        cur = mul_mod(cur, gamma_, ell);
    }
    std::sort(baby_.begin(), baby_.end());
    giant_ = inverse_mod(pow_mod(gamma_, m_, ell), ell);
    g_inv_ = inverse_mod(g_, ell);
}

u64 PrimePowerLog::solve_digit(u64 h) const {
    u64 cur = h;
    for (u64 i = 0; i <= m_; ++i) {
        auto it = std::lower_bound(baby_.begin(), baby_.end(), std::pair<u64, u64>(cur, 0));
        if (it != baby_.end() && it->first == cur) {
            u64 e = i * m_ + it->second;
            if (e < p_) return e;
        }
        cur = mul_mod(cur, giant_, ell_);
    }
    throw NotInSubgroup("element is not in the subgroup generated by the base");
}

u64 PrimePowerLog::operator()(u64 w) const {
    w %= ell_;
    if (pow_mod(w, order_, ell_) != 1) throw NotInSubgroup("element is not in the subgroup generated by the base");
    u64 x = 0;
    u64 place = 1;            // p^k
    u64 g_inv_place = g_inv_;  // g^(-p^k)
    u64 residual = w;         // w * g^(-x)
    for (unsigned k = 0; k < n_; ++k) {
        u64 h = pow_mod(residual, order_ / (place * p_), ell_);
        u64 digit = solve_digit(h);
        x += digit * place;
        residual = mul_mod(residual, pow_mod(g_inv_place, digit, ell_), ell_);
        g_inv_place = pow_mod(g_inv_place, p_, ell_);
        place *= p_;
    }
    return x;
}

u64 dlog_prime_power(u64 ell, u64 g, u64 w, u64 p, unsigned n) { return PrimePowerLog(ell, g, p, n)(w); }

}  // namespace chindex
