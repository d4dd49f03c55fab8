#include "chindex/residual.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "chindex/cyclotomic.hpp"

namespace chindex {

using Element = QuotientGroup::Element;

namespace {

Element class_mod_conductor(const FieldSpec& F, u64 t) { return F.conductor == 1 ? 0 : F.G().class_of(t % F.conductor); }

/// Image in G of the units congruent to 1 modulo `modulus` (a divisor of f).
std::vector<bool> congruence_image(const FieldSpec& F, u64 modulus) {
    const auto& G = F.G();
    std::vector<bool> member(G.size(), false);
    member[0] = true;
    if (F.conductor == 1) return member;
    for (u64 t = 1; t < F.conductor; t += modulus)
        if (std::gcd(t, F.conductor) == 1) member[G.class_of(t)] = true;
    return member;
}

}  // namespace

ResidualContext ResidualContext::make(const FieldSpec& F, u64 ell, unsigned n, unsigned r, std::optional<u64> eta) {
    if (r < 3 || r % 2 == 0) throw std::invalid_argument("r must be odd and at least 3, got " + std::to_string(r));
    if (n < F.min_level())
        throw std::invalid_argument("level " + std::to_string(n) + " is below max(a, 1) = " + std::to_string(F.min_level()));
    if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not an odd prime");
    const u64 pn = ipow(F.p, n);
    if ((ell - 1) % (F.d * pn) != 0)
        throw std::invalid_argument("ell = " + std::to_string(ell) + " is not 1 modulo d p^n = " + std::to_string(F.d * pn));

    ResidualContext ctx;
    ctx.field_ = F;
    ctx.ell_ = ell;
    ctx.n_ = n;
    ctx.r_ = r;
    ctx.pn_ = pn;
    if (eta) {
        const u64 e = *eta % ell;
        if (e == 0) throw std::invalid_argument("eta must be a unit modulo ell");
        for (u64 q : prime_divisors(ell - 1))
            if (pow_mod(e, (ell - 1) / q, ell) == 1)
                throw std::invalid_argument(std::to_string(*eta) + " is not a primitive root modulo " + std::to_string(ell));
        ctx.eta_ = e;
    } else {
        ctx.eta_ = primitive_root(ell);
    }
    ctx.g_p_ = pow_mod(ctx.eta_, (ell - 1) / pn, ell);
    ctx.log_ = std::make_shared<const PrimePowerLog>(ell, ctx.g_p_, F.p, n);
    return ctx;
}

RepresentativeSystem RepresentativeSystem::canonical(const FieldSpec& F, unsigned n) {
    const auto& G = F.G();
    const u64 M = F.d * ipow(F.p, n);
    RepresentativeSystem reps;
    reps.a.assign(G.size(), 0);
    std::size_t filled = 0;
    for (u64 t = 1; t < M + 1 && filled < G.size(); ++t) {
        if (std::gcd(t, M) != 1) continue;
        const Element g = G.inv(class_mod_conductor(F, t));
        if (reps.a[g] == 0) {
            reps.a[g] = t;
            ++filled;
        }
    }
    return reps;
}

RepresentativeSystem RepresentativeSystem::randomized(const FieldSpec& F, unsigned n, std::mt19937_64& rng) {
    const auto& G = F.G();
    const u64 M = F.d * ipow(F.p, n);
    std::uniform_int_distribution<u64> pick(1, M > 1 ? M - 1 : 1);
    RepresentativeSystem reps;
    reps.a.assign(G.size(), 0);
    for (Element g = 0; g < G.size(); ++g) {
        for (;;) {
            const u64 t = pick(rng);
            if (std::gcd(t, M) == 1 && G.inv(class_mod_conductor(F, t)) == g) {
                reps.a[g] = t;
                break;
            }
        }
    }
    reps.j_offset = std::uniform_int_distribution<u64>(0, 1000)(rng);
    return reps;
}

GroupRingElt residual_vector(const ResidualContext& ctx, u64 b) {
    return residual_vector(ctx, b, RepresentativeSystem::canonical(ctx.field(), ctx.n()));
}

GroupRingElt residual_vector(const ResidualContext& ctx, u64 b, const RepresentativeSystem& reps) {
    const FieldSpec& F = ctx.field();
    if (b == 0 || F.d % b != 0) throw std::invalid_argument("b = " + std::to_string(b) + " does not divide d = " + std::to_string(F.d));
    if (reps.a.size() != F.G().size()) throw std::invalid_argument("representative system does not match the group");
    const u64 ell = ctx.ell();
    const u64 pn = ctx.pn();
    const u64 B = b * pn;
    const u64 exponent = (ell - 1) / pn;
    const auto J = galois_representatives(F, b, ctx.n());

    // D[j] = dlog((1 - zeta_B^j)^{(ell-1)/p^n}) for every unit j mod B.
    std::vector<u64> D(B, 0);
    const u64 zeta = pow_mod(ctx.eta(), (ell - 1) / B, ell);
    u64 zp = 1;
    for (u64 j = 0; j < B; ++j, zp = mul_mod(zp, zeta, ell)) {
        if (std::gcd(j, B) != 1) continue;
        const u64 factor = sub_mod(1, zp, ell);
        if (factor == 0) throw std::logic_error("zero cyclotomic factor");
        D[j] = ctx.log()(pow_mod(factor, exponent, ell));
    }

    const RingAmbient amb = ctx.ambient();
    GroupRingElt v(amb);
    const unsigned twist = ctx.r() - 1;
    for (Element g = 0; g < amb.size(); ++g) {
        const u64 ag = reps.a[g];
        u64 coord = 0;
        for (u64 i : J) {
            const u64 lifted = i + reps.j_offset * B;
            const u64 j = mul_mod(ag % B, lifted % B, B);
            const u64 w = mul_mod(ag % pn, lifted % pn, pn);
            coord = add_mod(coord, mul_mod(pow_mod(w, twist, pn), D[j], pn), pn);
        }
        v.set(g, coord);
    }
    return v;
}

unsigned residual_index(const GroupRingElt& T_chi, unsigned ima_valuation, const GroupRingElt& c) {
    const unsigned span = chi_span_order(T_chi, c).valuation;
    if (span > ima_valuation) throw std::logic_error("residual span exceeds the chi-part");
    return ima_valuation - span;
}

unsigned residual_index(const ResidualContext& ctx, const Character& chi, const GroupRingElt& c) {
    if (!(c.ambient() == ctx.ambient())) throw std::invalid_argument("residual_index: ambient mismatch");
    const GroupRingElt T = build_T_chi(c.ambient(), chi);
    const unsigned full = chi_span_order(T, GroupRingElt::one(c.ambient())).valuation;
    return residual_index(T, full, c);
}

bool check_norm_relation(const ResidualContext& ctx, u64 q, u64 b) {
    const FieldSpec& F = ctx.field();
    if (q == F.p) throw std::invalid_argument("q must differ from p");
    if (q < 2 || !is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
    if (b == 0 || F.d % (q * b) != 0)
        throw std::invalid_argument("q b = " + std::to_string(q * b) + " does not divide d = " + std::to_string(F.d));
    const auto& G = F.G();
    const u64 pa = ipow(F.p, F.a);

    const auto K_b = congruence_image(F, b * pa);
    const auto K_qb = congruence_image(F, q * b * pa);
    std::vector<Element> transversal;
    std::vector<bool> covered(G.size(), false);
    for (Element k = 0; k < G.size(); ++k) {
        if (!K_b[k] || covered[k]) continue;
        transversal.push_back(k);
        for (Element x = 0; x < G.size(); ++x)
            if (K_qb[x]) covered[G.mul(k, x)] = true;
    }

    const GroupRingElt v_b = residual_vector(ctx, b);
    const GroupRingElt v_qb = residual_vector(ctx, q * b);
    GroupRingElt lhs(ctx.ambient());
    for (Element t : transversal) lhs = lhs + v_qb.act(t);

    if (b % q == 0) return lhs == v_b;
    u64 t = q;
    while (std::gcd(t, F.conductor) != 1) t += b * pa;
    const Element frob = class_mod_conductor(F, t);
    const u64 factor = pow_mod(q % ctx.pn(), ctx.r() - 1, ctx.pn());
    const GroupRingElt rhs = v_b - v_b.act(G.inv(frob)).scaled(factor);
    return lhs == rhs;
}

u64 teichmuller(u64 x, u64 p, unsigned n) {
    if (x % p == 0) throw std::domain_error("teichmuller: p divides x");
    const u64 q = ipow(p, n);
    u64 y = x % q;
    for (;;) {
        const u64 next = pow_mod(y, p, q);
        if (next == y) return y;
        y = next;
    }
}

unsigned kurihara_index(const ResidualContext& ctx, const Character& chi, const GroupRingElt& c) {
    const u64 p = ctx.p();
    if ((p - 1) % chi.order != 0)
        throw std::invalid_argument("kurihara_index needs o(chi) | p - 1, got o(chi) = " + std::to_string(chi.order));
    const PadicTraces roots(chi.order, p, ctx.n());
    const auto& G = *c.ambient().group;
    const u64 q = ctx.pn();
    u64 s = 0;
    for (Element g = 0; g < G.size(); ++g) s = add_mod(s, mul_mod(roots.root_power(character_value(G, chi, g)), c[g], q), q);
    return std::min(ctx.n(), valuation(s, p, ctx.n()));
}

}  // namespace chindex
