#include "chindex/fieldspec.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace chindex {

namespace {

/// Closure of the generators in (Z/m)^x, as a membership table over residues.
std::vector<bool> subgroup_closure(u64 m, const std::vector<u64>& gens) {
    std::vector<bool> member(m, false);
    std::vector<u64> frontier{1 % m};
    member[1 % m] = true;
    while (!frontier.empty()) {
        u64 x = frontier.back();
        frontier.pop_back();
        for (u64 g : gens) {
            u64 y = mul_mod(x, g % m, m);
            if (!member[y]) {
                member[y] = true;
                frontier.push_back(y);
            }
        }
    }
    return member;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [q, e] : factorize(n)) {
        const std::size_t count = out.size();
        u64 pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 crt_lift(u64 residue, u64 prime_power, u64 modulus) {
    // t == residue (mod prime_power), t == 1 (mod modulus / prime_power)
    const u64 rest = modulus / prime_power;
    if (rest == 1) return residue % modulus;
    const u64 inv = inverse_mod(rest % prime_power, prime_power);
    // t = 1 + rest * k with rest * k == residue - 1 (mod prime_power)
    const u64 k = mul_mod(sub_mod(residue % prime_power, 1 % prime_power, prime_power), inv, prime_power);
    return (1 + rest * k) % modulus;
}

void check_modulus(u64 f) {
    if (f == 0) throw FieldError("conductor must be positive");
    if (f % 4 == 2) throw FieldError("conductor " + std::to_string(f) + " is congruent to 2 mod 4");
}

}  // namespace

u64 AbelianStructure::order() const {
    u64 n = 1;
    for (u64 o : orders) n *= o;
    return n;
}

AbelianStructure unit_group_structure(u64 f) {
    check_modulus(f);
    AbelianStructure s;
    s.modulus = f;
    for (auto [q, e] : factorize(f)) {
        const u64 qe = ipow(q, e);
        if (q == 2) {
            if (e >= 2) {
                s.generators.push_back(crt_lift(qe - 1, qe, f));
                s.orders.push_back(2);
            }
            if (e >= 3) {
                s.generators.push_back(crt_lift(5, qe, f));
                s.orders.push_back(qe / 4);
            }
            continue;
        }
        u64 g = primitive_root(q);
        if (e >= 2 && pow_mod(g, q - 1, q * q) == 1) g += q;
        s.generators.push_back(crt_lift(g, qe, f));
        s.orders.push_back(qe / q * (q - 1));
    }
    return s;
}

QuotientGroup::QuotientGroup(u64 modulus, const std::vector<u64>& subgroup_generators) : modulus_(modulus) {
    if (modulus == 0) throw FieldError("modulus must be positive");
    for (u64 h : subgroup_generators)
        if (std::gcd(h % modulus, modulus) != 1 && modulus > 1)
            throw FieldError("subgroup generator " + std::to_string(h) + " is not a unit modulo " + std::to_string(modulus));
    const auto member = subgroup_closure(modulus, subgroup_generators);
    std::vector<u64> H;
    for (u64 x = 0; x < modulus; ++x)
        if (member[x]) H.push_back(x);
    subgroup_size_ = H.size();

    class_.assign(modulus, -1);
    if (modulus == 1) {
        class_[0] = 0;
        reps_.push_back(1);
    } else {
        for (u64 x = 1; x < modulus; ++x) {
            if (class_[x] != -1 || std::gcd(x, modulus) != 1) continue;
            const auto id = static_cast<std::int32_t>(reps_.size());
            for (u64 h : H) class_[mul_mod(x, h, modulus)] = id;
            reps_.push_back(x);
        }
    }
    const std::size_t n = reps_.size();
    if (n > kMaxGroupOrder)
        throw FieldError("Galois group of order " + std::to_string(n) + " exceeds the supported maximum " +
                         std::to_string(kMaxGroupOrder));
    table_.resize(n * n);
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = class_of(mul_mod(reps_[i], reps_[j], modulus_));
        for (std::size_t j = 0; j < n; ++j)
            if (table_[i * n + j] == 0) inverse_[i] = static_cast<Element>(j);
    }
    compute_structure();
}

QuotientGroup::Element QuotientGroup::class_of(u64 t) const {
    const std::int32_t c = class_[t % modulus_];
    if (c < 0) throw FieldError(std::to_string(t) + " is not a unit modulo " + std::to_string(modulus_));
    return static_cast<Element>(c);
}

QuotientGroup::Element QuotientGroup::pow(Element a, u64 e) const {
    Element r = 0;
    Element b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

u64 QuotientGroup::element_order(Element a) const {
    u64 k = 1;
    for (Element x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

void QuotientGroup::compute_structure() {
    const std::size_t n = size();
    std::vector<std::vector<std::pair<Element, u64>>> primary_bases;
    for (auto [q, e] : factorize(n)) {
        const u64 qe = ipow(q, e);
        std::vector<Element> part;
        for (Element x = 0; x < n; ++x)
            if (pow(x, qe) == 0) part.push_back(x);
        std::vector<bool> span(n, false);
        span[0] = true;
        std::size_t span_size = 1;
        std::vector<std::pair<Element, u64>> basis;
        while (span_size < part.size()) {
            // Element whose class in part / span has the largest order.
            Element best = 0;
            u64 best_order = 0;
            for (Element x : part) {
                u64 o = 1;
                Element y = x;
                while (!span[y]) {
                    y = mul(y, x);
                    ++o;
                }
                if (!span[x] && o > best_order) {
                    best = x;
                    best_order = o;
                }
            }
            // Adjust by the span so the order is exactly best_order.
            Element chosen = best;
            for (Element s = 0; s < n; ++s) {
                if (!span[s]) continue;
                Element c = mul(best, s);
                if (pow(c, best_order) == 0) {
                    chosen = c;
                    break;
                }
            }
            basis.emplace_back(chosen, best_order);
            std::vector<Element> members;
            for (Element s = 0; s < n; ++s)
                if (span[s]) members.push_back(s);
            Element power = 0;
            for (u64 j = 0; j < best_order; ++j) {
                for (Element s : members) span[mul(s, power)] = true;
                power = mul(power, chosen);
            }
            span_size *= best_order;
        }
        primary_bases.push_back(std::move(basis));
    }
    // Merge the primary parts into invariant factors.
    std::size_t rank = 0;
    for (const auto& b : primary_bases) rank = std::max(rank, b.size());
    generators_.assign(rank, 0);
    generator_orders_.assign(rank, 1);
    for (const auto& b : primary_bases) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            generators_[i] = mul(generators_[i], b[i].first);
            generator_orders_[i] *= b[i].second;
        }
    }
    coords_.assign(n, {});
    std::vector<u64> c(rank, 0);
    for (std::size_t visited = 0; visited < n; ++visited) {
        Element g = 0;
        for (std::size_t i = 0; i < rank; ++i) g = mul(g, pow(generators_[i], c[i]));
        coords_[g] = c;
        for (std::size_t i = rank; i-- > 0;) {
            if (++c[i] < generator_orders_[i]) break;
            c[i] = 0;
        }
    }
}

AbelianStructure QuotientGroup::structure() const {
    AbelianStructure s;
    s.modulus = modulus_;
    for (Element g : generators_) s.generators.push_back(reps_[g]);
    s.orders = generator_orders_;
    return s;
}

std::pair<u64, std::vector<u64>> normalize_conductor(u64 f, const std::vector<u64>& subgroup) {
    check_modulus(f);
    for (u64 h : subgroup)
        if (f > 1 && std::gcd(h % f, f) != 1)
            throw FieldError("subgroup generator " + std::to_string(h) + " is not a unit modulo " + std::to_string(f));
    if (f == 1) return {1, {}};
    const auto member = subgroup_closure(f, subgroup);
    u64 conductor = f;
    for (u64 fp : divisors(f)) {
        bool contained = true;
        for (u64 t = 1; t < f && contained; t += fp)
            if (std::gcd(t, f) == 1 && !member[t]) contained = false;
        if (contained) {
            conductor = fp;
            break;
        }
    }
    std::vector<bool> image(conductor, false);
    for (u64 x = 0; x < f; ++x)
        if (member[x]) image[x % conductor] = true;
    std::vector<u64> gens;
    if (conductor > 1) {
        std::vector<u64> current;
        auto span = subgroup_closure(conductor, current);
        for (u64 t = 1; t < conductor; ++t) {
            if (image[t] && !span[t]) {
                current.push_back(t);
                span = subgroup_closure(conductor, current);
            }
        }
        gens = current;
    }
    return {conductor, gens};
}

FieldSpec quotient_structure(u64 f, const std::vector<u64>& subgroup, u64 p) {
    if (p < 3 || !is_prime(p)) throw FieldError("p must be an odd prime");
    check_modulus(f);
    const auto member = subgroup_closure(f, subgroup);
    if (!member[(f - 1) % f]) throw FieldError("not totally real: -1 is not in the subgroup");
    auto [conductor, gens] = normalize_conductor(f, subgroup);
    FieldSpec F;
    F.conductor = conductor;
    F.p = p;
    F.a = valuation(conductor, p);
    F.d = conductor / ipow(p, F.a);
    F.subgroup = gens;
    F.group = std::make_shared<const QuotientGroup>(conductor, gens);
    return F;
}

FieldSpec rational_field(u64 p) { return quotient_structure(1, {}, p); }

FieldSpec real_cyclotomic_field(u64 f, u64 p) { return quotient_structure(f, {f - 1}, p); }

Character make_character(const QuotientGroup& G, std::vector<u64> exponents) {
    const auto& orders = G.generator_orders();
    if (exponents.size() != orders.size())
        throw std::invalid_argument("character needs " + std::to_string(orders.size()) + " exponents, got " +
                                    std::to_string(exponents.size()));
    Character chi;
    chi.order = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        exponents[i] %= orders[i];
        const u64 value_order = orders[i] / std::gcd(exponents[i], orders[i]);
        chi.order = std::lcm(chi.order, value_order);
    }
    chi.value_exponents.resize(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const u64 g = std::gcd(exponents[i], orders[i]);
        const u64 value_order = orders[i] / g;
        chi.value_exponents[i] = (exponents[i] / g) * (chi.order / value_order) % chi.order;
    }
    chi.exponents = std::move(exponents);
    return chi;
}

u64 character_value(const QuotientGroup& G, const Character& chi, QuotientGroup::Element g) {
    const auto& c = G.coordinates(g);
    u64 k = 0;
    for (std::size_t i = 0; i < c.size(); ++i) k = (k + mul_mod(chi.value_exponents[i], c[i], chi.order)) % chi.order;
    return k;
}

Character character_power(const QuotientGroup& G, const Character& chi, u64 t) {
    std::vector<u64> e = chi.exponents;
    const auto& orders = G.generator_orders();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = mul_mod(e[i], t % orders[i], orders[i]);
    return make_character(G, e);
}

bool in_kernel(const QuotientGroup& G, const Character& chi, QuotientGroup::Element g) {
    return character_value(G, chi, g) == 0;
}

std::vector<Character> enumerate_characters(const QuotientGroup& G) {
    const auto& orders = G.generator_orders();
    std::vector<Character> out;
    std::vector<u64> e(orders.size(), 0);
    for (std::size_t k = 0; k < G.size(); ++k) {
        out.push_back(make_character(G, e));
        for (std::size_t i = e.size(); i-- > 0;) {
            if (++e[i] < orders[i]) break;
            e[i] = 0;
        }
    }
    return out;
}

u64 qp_degree(u64 character_order, u64 p) {
    const unsigned s = valuation(character_order, p);
    const u64 ps = ipow(p, s);
    const u64 mprime = character_order / ps;
    const u64 phi_ps = s == 0 ? 1 : ps / p * (p - 1);
    const u64 ord = mprime == 1 ? 1 : multiplicative_order(p % mprime, mprime, euler_phi(mprime));
    return phi_ps * ord;
}

std::vector<u64> qp_galois_subgroup(u64 m, u64 p) {
    if (m == 1) return {1};
    const u64 mprime = m / ipow(p, valuation(m, p));
    std::vector<bool> powers(mprime, false);
    u64 x = 1 % mprime;
    do {
        powers[x] = true;
        x = mul_mod(x, p % mprime, mprime);
    } while (x != 1 % mprime);
    std::vector<u64> D;
    for (u64 t = 1; t < m; ++t)
        if (std::gcd(t, m) == 1 && powers[t % mprime]) D.push_back(t);
    return D;
}

std::vector<CharacterClass> qp_conjugacy_classes(const QuotientGroup& G, const std::vector<Character>& characters, u64 p) {
    std::set<std::vector<u64>> seen;
    std::vector<CharacterClass> classes;
    for (const auto& chi : characters) {
        if (seen.count(chi.exponents)) continue;
        CharacterClass cls;
        cls.representative = chi;
        cls.degree = qp_degree(chi.order, p);
        for (u64 t : qp_galois_subgroup(chi.order, p)) {
            Character psi = character_power(G, chi, t);
            if (seen.insert(psi.exponents).second) cls.orbit.push_back(psi);
        }
        if (cls.orbit.size() != cls.degree)
            throw std::logic_error("conjugacy orbit size disagrees with [Q_p(chi):Q_p]");
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<u64> galois_representatives(const FieldSpec& F, u64 b, unsigned n) {
    if (b == 0 || F.d % b != 0) throw std::invalid_argument("b = " + std::to_string(b) + " does not divide d = " + std::to_string(F.d));
    if (n < F.min_level())
        throw std::invalid_argument("level " + std::to_string(n) + " is below max(a, 1) = " + std::to_string(F.min_level()));
    const u64 pn = ipow(F.p, n);
    const u64 big = F.d * pn;
    const auto& G = F.G();
    std::vector<u64> Jd;
    for (u64 t = 1; t < big; ++t) {
        if (std::gcd(t, big) != 1) continue;
        if (G.in_subgroup(t % F.conductor)) Jd.push_back(t);
    }
    if (b == F.d) return Jd;
    const u64 bpa = b * ipow(F.p, F.a);
    std::vector<bool> image(bpa, false);
    for (u64 t : Jd) image[t % bpa] = true;
    const u64 modulus = b * pn;
    std::vector<u64> out;
    for (u64 t = 1; t < modulus; ++t) {
        if (std::gcd(t, modulus) != 1) continue;
        if (image[t % bpa]) out.push_back(t);
    }
    return out;
}

std::string describe(const FieldSpec& F) {
    std::ostringstream os;
    if (F.conductor == 1) {
        os << "Q";
    } else {
        os << "conductor " << F.conductor << ", H = <";
        for (std::size_t i = 0; i < F.subgroup.size(); ++i) os << (i ? "," : "") << F.subgroup[i];
        os << ">, [F:Q] = " << F.G().size();
    }
    return os.str();
}

}  // namespace chindex
