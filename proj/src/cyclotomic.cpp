#include "chindex/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "chindex/fieldspec.hpp"

namespace chindex {

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

/// Quotient of a by the monic polynomial b; the remainder must vanish.
Poly exact_divide(Poly a, const Poly& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {0};
    Poly quotient(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t c = a[i];
        quotient[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return quotient;
}

/// Remainder of a modulo the monic polynomial b.
Poly remainder(Poly a, const Poly& b) {
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t c = a[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(std::max<std::size_t>(db, 1));
    trim(a);
    return a;
}

// Polynomials over F_p, constant term first.
using PolyP = std::vector<u64>;

void trim_p(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP mod_p(PolyP a, const PolyP& b, u64 p) {
    trim_p(a);
    const std::size_t db = b.size() - 1;
    const u64 lead_inv = inverse_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 c = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = sub_mod(a[shift + j], mul_mod(c, b[j], p), p);
        trim_p(a);
    }
    return a;
}

PolyP mulmod_p(const PolyP& a, const PolyP& b, const PolyP& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    return mod_p(r, m, p);
}

PolyP gcd_p(PolyP a, PolyP b, u64 p) {
    trim_p(a);
    trim_p(b);
    while (!b.empty()) {
        PolyP r = mod_p(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool irreducible_p(const PolyP& P, u64 p) {
    const unsigned f = static_cast<unsigned>(P.size() - 1);
    PolyP xpow{0, 1};  // x
    for (unsigned k = 1; k <= f / 2; ++k) {
        // xpow <- xpow^p mod P
        PolyP base = xpow, result{1};
        for (u64 e = p; e; e >>= 1) {
            if (e & 1) result = mulmod_p(result, base, P, p);
            base = mulmod_p(base, base, P, p);
        }
        xpow = result;
        PolyP diff = xpow;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        if (gcd_p(P, diff, p).size() > 1) return false;
    }
    return true;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(u64 m) {
    if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
    static std::mutex guard;
    static std::map<u64, Poly> cache;
    {
        std::lock_guard<std::mutex> lock(guard);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    Poly result(m + 1, 0);
    result[0] = -1;
    result[m] = 1;
    for (u64 e = 1; e < m; ++e)
        if (m % e == 0) result = exact_divide(result, cyclotomic_polynomial(e));
    trim(result);
    std::lock_guard<std::mutex> lock(guard);
    cache.emplace(m, result);
    return result;
}

std::int64_t trace_root_of_unity(u64 m, u64 k, u64 p) {
    const Poly phi = cyclotomic_polynomial(m);
    Poly sum(m, 0);
    for (u64 t : qp_galois_subgroup(m, p)) sum[mul_mod(k % m, t, m)] += 1;
    Poly r = remainder(sum, phi);
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) throw std::domain_error("non-rational trace");
    return r[0];
}

std::int64_t ramanujan_sum_prime_power(u64 p, unsigned s, u64 k) {
    if (s == 0) return 1;
    const u64 ps = ipow(p, s);
    const unsigned v = valuation(k % ps, p, s);
    if (v >= s) return static_cast<std::int64_t>(ps / p * (p - 1));
    if (v + 1 == s) return -static_cast<std::int64_t>(ps / p);
    return 0;
}

GaloisRing::GaloisRing(u64 p, unsigned n, unsigned f) : p_(p), n_(n), f_(f), q_(ipow(p, n)) {
    if (f == 0 || n == 0) throw std::invalid_argument("Galois ring needs positive degree and level");
    const u64 count = ipow(p, f);
    for (u64 code = 0; code < count; ++code) {
        PolyP P(f + 1, 0);
        u64 c = code;
        for (unsigned i = 0; i < f; ++i) {
            P[i] = c % p;
            c /= p;
        }
        P[f] = 1;
        if (irreducible_p(P, p)) {
            poly_ = P;
            break;
        }
    }
    if (poly_.empty()) throw std::logic_error("no irreducible polynomial found");

    // First element of multiplicative order p^f - 1 in the residue field.
    GaloisRing residue_field = *this;
    residue_field.n_ = 1;
    residue_field.q_ = p;
    const u64 group_order = count - 1;
    const auto qs = prime_divisors(group_order);
    Element y;
    for (u64 code = 1; code < count; ++code) {
        Element cand(f, 0);
        u64 c = code;
        for (unsigned i = 0; i < f; ++i) {
            cand[i] = c % p;
            c /= p;
        }
        bool primitive = true;
        for (u64 r : qs)
            if (residue_field.pow(cand, group_order / r) == residue_field.one()) {
                primitive = false;
                break;
            }
        if (primitive) {
            y = cand;
            break;
        }
    }
    // Teichmuller lift: y^{(p^f)^{n-1}}.
    Element t = y;
    for (unsigned i = 1; i < n; ++i) t = pow(t, count);
    generator_ = t;
}

GaloisRing::Element GaloisRing::one() const { return constant(1); }

GaloisRing::Element GaloisRing::constant(u64 c) const {
    Element e(f_, 0);
    e[0] = c % q_;
    return e;
}

GaloisRing::Element GaloisRing::add(const Element& a, const Element& b) const {
    Element r(f_);
    for (unsigned i = 0; i < f_; ++i) r[i] = add_mod(a[i], b[i], q_);
    return r;
}

GaloisRing::Element GaloisRing::mul(const Element& a, const Element& b) const {
    std::vector<u64> r(2 * f_ - 1, 0);
    for (unsigned i = 0; i < f_; ++i)
        for (unsigned j = 0; j < f_; ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], q_), q_);
    for (std::size_t i = r.size(); i-- > f_;) {
        const u64 c = r[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < f_; ++j) r[i - f_ + j] = sub_mod(r[i - f_ + j], mul_mod(c, poly_[j] % q_, q_), q_);
        r[i] = 0;
    }
    r.resize(f_);
    return r;
}

GaloisRing::Element GaloisRing::pow(Element a, u64 e) const {
    Element r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool GaloisRing::is_constant(const Element& a) const {
    for (unsigned i = 1; i < f_; ++i)
        if (a[i] != 0) return false;
    return true;
}

PadicTraces::PadicTraces(u64 m, u64 p, unsigned n) : m_(m), p_(p), n_(n), q_(ipow(p, n)) {
    if (m == 0) throw std::invalid_argument("root of unity order must be positive");
    s_ = valuation(m, p);
    ps_ = ipow(p, s_);
    mprime_ = m / ps_;
    alpha_ = mprime_ == 1 ? 0 : inverse_mod(ps_ % mprime_, mprime_);
    const unsigned f = mprime_ == 1 ? 1 : static_cast<unsigned>(multiplicative_order(p % mprime_, mprime_, euler_phi(mprime_)));
    const GaloisRing ring(p, n, f);
    const u64 field_units = ipow(p, f) - 1;
    const auto zeta = ring.pow(ring.teichmuller_generator(), field_units / mprime_);
    std::vector<GaloisRing::Element> powers(mprime_);
    powers[0] = ring.one();
    for (u64 j = 1; j < mprime_; ++j) powers[j] = ring.mul(powers[j - 1], zeta);
    periods_.resize(mprime_);
    for (u64 j = 0; j < mprime_; ++j) {
        auto acc = ring.constant(0);
        u64 e = j;
        for (unsigned i = 0; i < f; ++i) {
            acc = ring.add(acc, powers[e]);
            e = mul_mod(e, p % mprime_, mprime_);
        }
        if (!ring.is_constant(acc)) throw std::logic_error("unramified trace is not Frobenius-invariant");
        periods_[j] = acc[0];
    }
    if (f == 1 && s_ == 0) {
        roots_.resize(mprime_);
        for (u64 j = 0; j < mprime_; ++j) roots_[j] = powers[j][0];
    }
}

u64 PadicTraces::trace(u64 k) const {
    k %= m_;
    const u64 unramified = periods_[mprime_ == 1 ? 0 : mul_mod(k % mprime_, alpha_, mprime_)];
    const std::int64_t ram = ramanujan_sum_prime_power(p_, s_, k % ps_);
    const u64 ram_mod = ram >= 0 ? static_cast<u64>(ram) % q_ : (q_ - static_cast<u64>(-ram) % q_) % q_;
    return mul_mod(unramified, ram_mod, q_);
}

u64 PadicTraces::root_power(u64 k) const {
    if (roots_.empty()) throw std::domain_error("roots of unity of this order do not lie in Z_p");
    return roots_[k % m_];
}

}  // namespace chindex
