#include "chindex/bernoulli.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "chindex/cyclotomic.hpp"

namespace chindex {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

mpz_class power(const mpz_class& base, unsigned e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// p-adic valuation of a nonzero rational (may be negative).
long rational_valuation(const mpq_class& x, u64 p) {
    const mpz_class P(static_cast<unsigned long>(p));
    long v = 0;
    mpz_class num = x.get_num(), den = x.get_den();
    while (num % P == 0) {
        num /= P;
        ++v;
    }
    while (den % P == 0) {
        den /= P;
        --v;
    }
    return v;
}

std::vector<u64> divisors_of(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

/// Rescale the exponents to the true order of the character.
void normalize(DirichletCharacter& chi) {
    u64 g = chi.order;
    for (std::int64_t v : chi.values)
        if (v >= 0) g = std::gcd(g, static_cast<u64>(v));
    if (g == 0) g = 1;
    chi.order /= g;
    for (auto& v : chi.values)
        if (v >= 0) v /= static_cast<std::int64_t>(g);
}

}  // namespace

ExactRational bernoulli(unsigned k) {
    static std::mutex guard;
    static std::vector<mpq_class> table{mpq_class(1)};
    std::lock_guard<std::mutex> lock(guard);
    while (table.size() <= k) {
        const unsigned m = static_cast<unsigned>(table.size());
        mpq_class sum = 0;
        for (unsigned j = 0; j < m; ++j) sum += mpq_class(binomial(m + 1, j)) * table[j];
        mpq_class b = -sum / (m + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[k];
}

ExactRational bernoulli_polynomial(unsigned k, const ExactRational& x) {
    mpq_class out = 0;
    mpq_class xp = 1;  // x^{k-j}, built from j = k downwards
    for (unsigned j = k + 1; j-- > 0;) {
        out += mpq_class(binomial(k, j)) * bernoulli(j) * xp;
        xp *= x;
    }
    out.canonicalize();
    return out;
}

bool is_regular(u64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("is_regular needs an odd prime");
    const mpz_class P(static_cast<unsigned long>(p));
    for (unsigned k = 2; k + 3 <= p; k += 2)
        if (bernoulli(k).get_num() % P == 0) return false;
    return true;
}

CyclotomicRational::CyclotomicRational(u64 m) : m_(m), coeffs_(cyclotomic_polynomial(m).size() - 1, mpq_class(0)) {}

CyclotomicRational CyclotomicRational::from_powers(u64 m, const std::vector<ExactRational>& weights) {
    const auto phi = cyclotomic_polynomial(m);
    const std::size_t deg = phi.size() - 1;
    std::vector<mpq_class> w = weights;
    if (w.size() < deg) w.resize(deg, mpq_class(0));
    for (std::size_t i = w.size(); i-- > deg;) {
        if (w[i] == 0) continue;
        const mpq_class c = w[i];
        for (std::size_t j = 0; j <= deg; ++j) w[i - deg + j] -= c * phi[j];
    }
    CyclotomicRational out(m);
    for (std::size_t i = 0; i < deg; ++i) {
        out.coeffs_[i] = w[i];
        out.coeffs_[i].canonicalize();
    }
    return out;
}

bool CyclotomicRational::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicRational::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

CyclotomicRational CyclotomicRational::operator*(const CyclotomicRational& other) const {
    if (m_ != other.m_) throw std::invalid_argument("cyclotomic elements of different orders");
    std::vector<mpq_class> prod(2 * coeffs_.size(), mpq_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
    return from_powers(m_, prod);
}

CyclotomicRational CyclotomicRational::scaled(const ExactRational& factor) const {
    CyclotomicRational out(m_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * factor;
    return out;
}

ExactRational CyclotomicRational::norm() const {
    const std::size_t deg = coeffs_.size();
    // Clear denominators, then take a fraction-free (Bareiss) determinant of
    // the matrix whose column j holds D * this * zeta^j.
    mpz_class D = 1;
    for (const auto& c : coeffs_) D = lcm(D, mpz_class(c.get_den()));
    std::vector<std::vector<mpz_class>> M(deg, std::vector<mpz_class>(deg));
    for (std::size_t j = 0; j < deg; ++j) {
        std::vector<mpq_class> shifted(deg + j, mpq_class(0));
        for (std::size_t i = 0; i < deg; ++i) shifted[i + j] = coeffs_[i] * D;
        const auto col = from_powers(m_, shifted);
        for (std::size_t i = 0; i < deg; ++i) M[i][j] = col.coeffs_[i].get_num();
    }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < deg; ++k) {
        std::size_t pivot = k;
        while (pivot < deg && M[pivot][k] == 0) ++pivot;
        if (pivot == deg) return 0;
        if (pivot != k) {
            std::swap(M[pivot], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < deg; ++i) {
            for (std::size_t j = k + 1; j < deg; ++j) {
                M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = M[k][k];
    }
    mpq_class det(sign * M[deg - 1][deg - 1], power(D, static_cast<unsigned>(deg)));
    det.canonicalize();
    return det;
}

DirichletCharacter DirichletCharacter::trivial(u64 modulus) {
    DirichletCharacter chi;
    chi.modulus = modulus;
    chi.values.assign(modulus, -1);
    for (u64 a = 0; a < modulus; ++a)
        if (std::gcd(a, modulus) == 1) chi.values[a] = 0;
    return chi;
}

DirichletCharacter DirichletCharacter::teichmuller_power(u64 p, u64 j) {
    DirichletCharacter chi;
    chi.modulus = p;
    chi.order = p - 1;
    chi.values.assign(p, -1);
    const u64 gamma = primitive_root(p);
    u64 x = 1;
    for (u64 e = 0; e < p - 1; ++e, x = mul_mod(x, gamma, p)) chi.values[x] = static_cast<std::int64_t>(mul_mod(e, j % (p - 1), p - 1));
    normalize(chi);
    return chi;
}

DirichletCharacter DirichletCharacter::from_field_character(const FieldSpec& F, const Character& chi) {
    DirichletCharacter out;
    out.modulus = F.conductor;
    out.order = chi.order;
    out.values.assign(F.conductor, -1);
    for (u64 a = 0; a < F.conductor; ++a) {
        if (std::gcd(a, F.conductor) != 1) continue;
        const auto g = F.conductor == 1 ? QuotientGroup::Element{0} : F.G().class_of(a);
        out.values[a] = static_cast<std::int64_t>(character_value(F.G(), chi, g));
    }
    normalize(out);
    return out;
}

u64 DirichletCharacter::conductor() const {
    for (u64 c : divisors_of(modulus)) {
        bool trivial_on_kernel = true;
        for (u64 a = 1 % c; a < modulus && trivial_on_kernel; a += c)
            if (values[a] > 0) trivial_on_kernel = false;
        if (trivial_on_kernel) return c;
    }
    return modulus;
}

DirichletCharacter DirichletCharacter::primitive() const {
    const u64 c = conductor();
    DirichletCharacter out;
    out.modulus = c;
    out.order = order;
    out.values.assign(c, -1);
    for (u64 a = 0; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        u64 lift = a;
        while (std::gcd(lift, modulus) != 1) lift += c;
        out.values[a] = values[lift % modulus];
    }
    normalize(out);
    return out;
}

bool DirichletCharacter::is_even() const {
    if (modulus <= 2) return true;
    return values[modulus - 1] == 0;
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    DirichletCharacter out;
    out.modulus = std::lcm(a.modulus, b.modulus);
    out.order = std::lcm(a.order, b.order);
    out.values.assign(out.modulus, -1);
    const u64 sa = out.order / a.order, sb = out.order / b.order;
    for (u64 x = 0; x < out.modulus; ++x) {
        const std::int64_t va = a.values[x % a.modulus], vb = b.values[x % b.modulus];
        if (va < 0 || vb < 0) continue;
        out.values[x] = static_cast<std::int64_t>((static_cast<u64>(va) * sa + static_cast<u64>(vb) * sb) % out.order);
    }
    normalize(out);
    return out;
}

namespace {

/// f^{k-1} B_k(a/f) for a = 1..f, memoized per (f, k).
const std::vector<mpq_class>& scaled_bernoulli_values(u64 f, unsigned k) {
    static std::mutex guard;
    static std::map<std::pair<u64, unsigned>, std::vector<mpq_class>> cache;
    {
        std::lock_guard<std::mutex> lock(guard);
        if (auto it = cache.find({f, k}); it != cache.end()) return it->second;
    }
    const mpz_class F(static_cast<unsigned long>(f));
    std::vector<mpq_class> Bj(k + 1), weight(k + 1);
    for (unsigned j = 0; j <= k; ++j) {
        Bj[j] = bernoulli(j);
        // binom(k, j) f^{j-1}
        weight[j] = j == 0 ? mpq_class(mpz_class(1), F) : mpq_class(binomial(k, j) * power(F, j - 1));
    }
    std::vector<mpq_class> values(f + 1);
    for (u64 a = 1; a <= f; ++a) {
        const mpz_class A(static_cast<unsigned long>(a));
        mpq_class term = 0;
        mpz_class apow = 1;  // a^{k-j}, from j = k downwards
        for (unsigned j = k + 1; j-- > 0;) {
            if (Bj[j] != 0) term += weight[j] * Bj[j] * mpq_class(apow);
            apow *= A;
        }
        term.canonicalize();
        values[a] = term;
    }
    std::lock_guard<std::mutex> lock(guard);
    return cache.emplace(std::make_pair(f, k), std::move(values)).first->second;
}

}  // namespace

CyclotomicRational generalized_bernoulli(const DirichletCharacter& psi, unsigned k) {
    if (k == 0) throw std::invalid_argument("generalized Bernoulli numbers need k >= 1");
    if (!psi.is_primitive()) throw std::invalid_argument("generalized_bernoulli needs a primitive character");
    const u64 f = psi.modulus;
    const auto& values = scaled_bernoulli_values(f, k);
    std::vector<mpq_class> weights(psi.order, mpq_class(0));
    for (u64 a = 1; a <= f; ++a) {
        const std::int64_t v = psi.values[a % f];
        if (v >= 0) weights[static_cast<std::size_t>(v)] += values[a];
    }
    return CyclotomicRational::from_powers(psi.order, weights);
}

namespace {

/// Valuation of x at the embedding zeta_m -> canonical root in Z_p; m | p - 1.
std::optional<unsigned> embedded_valuation(const CyclotomicRational& x, u64 p) {
    if ((p - 1) % x.order() != 0) return std::nullopt;
    unsigned N = 1;
    while (ipow(p, N) <= (u64{1} << 62) / p) ++N;
    const u64 q = ipow(p, N);
    const PadicTraces roots(x.order(), p, N);
    mpz_class den = 1;
    for (const auto& c : x.coefficients()) den = lcm(den, mpz_class(c.get_den()));
    const long vden = rational_valuation(mpq_class(den), p);
    const mpz_class Q(static_cast<unsigned long>(q));
    u64 acc = 0;
    for (std::size_t i = 0; i < x.coefficients().size(); ++i) {
        mpz_class c = x.coefficients()[i].get_num() * (den / x.coefficients()[i].get_den());
        c %= Q;
        if (c < 0) c += Q;
        acc = add_mod(acc, mul_mod(static_cast<u64>(c.get_ui()), roots.root_power(i), q), q);
    }
    const long v = static_cast<long>(valuation(acc, p, N)) - vden;
    return static_cast<unsigned>(std::max(0L, v));
}

void scan_field(const FieldSpec& F, const std::vector<Character>& characters, unsigned r_bound, std::vector<PredictedConfig>& out) {
    const u64 p = F.p;
    for (const auto& chi : characters) {
        const auto base = DirichletCharacter::from_field_character(F, chi);
        for (unsigned r = 3; r <= r_bound; r += 2) {
            const u64 j = (1 + (p - 1) - (2 * r) % (p - 1)) % (p - 1);  // 1 - 2r mod p - 1
            const auto psi = (base * DirichletCharacter::teichmuller_power(p, j)).primitive();
            const auto value = generalized_bernoulli(psi, r).scaled(mpq_class(1, r));
            PredictedConfig cfg;
            cfg.conductor = F.conductor;
            cfg.character = chi;
            cfg.r = r;
            const mpq_class N = value.norm();
            cfg.norm_valuation = N == 0 ? 64u : static_cast<unsigned>(std::max(0L, rational_valuation(N, p)));
            cfg.embedded_valuation = embedded_valuation(value, p);
            const unsigned v = cfg.embedded_valuation ? *cfg.embedded_valuation : cfg.norm_valuation;
            if (v > 0) out.push_back(cfg);
        }
    }
}

}  // namespace

std::vector<PredictedConfig> predicted_nontrivial_configs(const FieldSpec& F, unsigned r_bound) {
    std::vector<PredictedConfig> out;
    scan_field(F, enumerate_characters(F.G()), r_bound, out);
    return out;
}

std::vector<PredictedConfig> predicted_nontrivial_configs(u64 p, u64 conductor_bound, unsigned r_bound) {
    std::vector<PredictedConfig> out;
    for (u64 f = 1; f <= conductor_bound; ++f) {
        if (f % 4 == 2) continue;
        const FieldSpec F = f <= 2 ? rational_field(p) : real_cyclotomic_field(f, p);
        if (F.conductor != f) continue;
        std::vector<Character> exact;
        for (const auto& chi : enumerate_characters(F.G()))
            if (DirichletCharacter::from_field_character(F, chi).is_primitive()) exact.push_back(chi);
        scan_field(F, exact, r_bound, out);
    }
    return out;
}

}  // namespace chindex
