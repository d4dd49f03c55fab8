#include "chindex/checks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "chindex/bernoulli.hpp"
#include "chindex/cyclotomic.hpp"
#include "chindex/search.hpp"

namespace chindex {

using Element = QuotientGroup::Element;

namespace oracles {

unsigned exhaustive_span_valuation(const std::vector<GroupRingElt>& generators) {
    if (generators.empty()) return 0;
    const RingAmbient& amb = generators.front().ambient();
    const u64 q = amb.modulus();
    const std::size_t dim = amb.size();
    auto encode = [&](const std::vector<u64>& v) {
        u64 code = 0;
        for (std::size_t i = dim; i-- > 0;) code = code * q + v[i];
        return code;
    };
    std::unordered_set<u64> seen{0};
    std::vector<std::vector<u64>> frontier{std::vector<u64>(dim, 0)};
    while (!frontier.empty()) {
        std::vector<std::vector<u64>> next;
        for (const auto& v : frontier)
            for (const auto& g : generators) {
                std::vector<u64> w(dim);
                for (std::size_t i = 0; i < dim; ++i) w[i] = add_mod(v[i], g[static_cast<Element>(i)], q);
                if (seen.insert(encode(w)).second) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    unsigned v = 0;
    for (std::size_t size = seen.size(); size > 1; size /= amb.p) ++v;
    return v;
}

u64 brute_force_dlog(u64 ell, u64 g, u64 w, u64 order) {
    u64 x = 1;
    for (u64 e = 0; e < order; ++e, x = mul_mod(x, g, ell))
        if (x == w % ell) return e;
    throw NotInSubgroup("brute_force_dlog: not in subgroup");
}

GroupRingElt residual_vector_direct(const ResidualContext& ctx, u64 b) {
    const FieldSpec& F = ctx.field();
    const auto& G = F.G();
    const u64 ell = ctx.ell(), pn = ctx.pn(), B = b * pn;
    const u64 bpa = b * ipow(F.p, F.a);

    std::map<u64, u64> log_table;
    u64 x = 1;
    for (u64 e = 0; e < pn; ++e, x = mul_mod(x, ctx.g_p(), ell)) log_table[x] = e;

    auto class_of_lift = [&](u64 j) -> Element {
        if (F.conductor == 1) return 0;
        u64 t = j % bpa;
        while (std::gcd(t, F.conductor) != 1) t += bpa;
        return G.class_of(t % F.conductor);
    };
    // K_b: classes of units congruent to 1 mod b p^a.
    std::vector<bool> K(G.size(), false);
    K[0] = true;
    for (u64 t = 1; F.conductor > 1 && t < F.conductor; t += bpa)
        if (std::gcd(t, F.conductor) == 1) K[G.class_of(t)] = true;

    GroupRingElt v(ctx.ambient());
    for (u64 j = 1; j < B; ++j) {
        if (std::gcd(j, B) != 1) continue;
        const u64 zeta_j = pow_mod(ctx.eta(), mul_mod(j, (ell - 1) / B, ell - 1), ell);
        const u64 factor = pow_mod(sub_mod(1, zeta_j, ell), (ell - 1) / pn, ell);
        const u64 term = mul_mod(pow_mod(j % pn, ctx.r() - 1, pn), log_table.at(factor), pn);
        const Element c = class_of_lift(j);
        for (Element g = 0; g < G.size(); ++g)
            if (K[G.mul(G.inv(g), G.inv(c))]) v.add_to(g, term);
    }
    return v;
}

}  // namespace oracles

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FieldSpec field_for(u64 f, u64 p) { return f <= 2 ? rational_field(p) : real_cyclotomic_field(f, p); }

std::vector<u64> primitive_roots_upto(u64 ell, std::size_t limit) {
    std::vector<u64> roots;
    const auto qs = prime_divisors(ell - 1);
    for (u64 e = 2; e < ell && roots.size() < limit; ++e) {
        bool ok = true;
        for (u64 q : qs)
            if (pow_mod(e, (ell - 1) / q, ell) == 1) {
                ok = false;
                break;
            }
        if (ok) roots.push_back(e);
    }
    return roots;
}

}  // namespace

CheckResult check_regular_triviality(const CheckOptions& options) {
    CheckResult res{1, "regular-prime triviality", true, true, ""};
    std::ostringstream detail;
    for (u64 p : {3, 5, 7})
        for (unsigned r : {3u, 5u}) {
            SearchConfig cfg;
            cfg.ell_bound = 100000;
            cfg.threads = options.threads;
            const auto t0 = std::chrono::steady_clock::now();
            const auto reports = full_run(rational_field(p), r, cfg);
            const double secs = seconds_since(t0);
            const auto& rep = reports.front();
            const bool ok = is_regular(p) && reports.size() == 1 && rep.upper_bound_valuation == 0u && rep.stabilized && secs < 10.0;
            res.passed = res.passed && ok;
            detail << "p=" << p << ",r=" << r << ":" << (rep.upper_bound_valuation ? std::to_string(*rep.upper_bound_valuation) : "none")
                   << (rep.stabilized ? "/stable" : "/unstable") << " ";
        }
    res.detail = detail.str();
    return res;
}

CheckResult check_generator_law(const CheckOptions&) {
    CheckResult res{2, "chi-part generator law", true, true, ""};
    std::size_t cases = 0, failures = 0, ramified = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (u64 f : {1, 5, 7, 8, 9, 12, 13, 16, 20})
        for (u64 p : {3, 5}) {
            const std::vector<std::shared_ptr<const QuotientGroup>> groups{field_for(f, p).group,
                                                                           std::make_shared<const QuotientGroup>(f, std::vector<u64>{})};
            for (const auto& group : groups)
                for (unsigned n = 1; n <= 3; ++n) {
                    const RingAmbient amb(group, p, n);
                    for (const auto& chi : enumerate_characters(*group)) {
                        const unsigned expected = ima(chi, p, n);
                        const unsigned span = chi_span_order(chi, GroupRingElt::one(amb)).valuation;
                        const unsigned oracle = chi_part_order_oracle(amb, chi);
                        ++cases;
                        if (chi.order % p == 0) ++ramified;
                        if (span != expected || oracle != expected) ++failures;
                    }
                }
        }
    const double secs = seconds_since(t0);
    res.passed = failures == 0 && secs < 30.0;
    res.detail = std::to_string(cases) + " cases (" + std::to_string(ramified) + " with p | o), " + std::to_string(failures) + " failures";
    return res;
}

CheckResult check_invariance(const CheckOptions& options) {
    CheckResult res{3, "primitive-root and representative invariance", true, true, ""};
    std::mt19937_64 rng(options.seed);
    struct FieldChoice {
        u64 f, p;
    };
    const std::vector<FieldChoice> fields{{1, 3}, {1, 5}, {5, 3}, {7, 3}, {9, 3},  {13, 3}, {15, 3}, {21, 3},
                                          {35, 3}, {11, 5}, {13, 5}, {31, 5}, {25, 5}, {29, 7}, {8, 3}, {12, 5}};
    std::size_t configs = 0, evaluations = 0, failures = 0;
    while (configs < 60) {
        const auto& choice = fields[rng() % fields.size()];
        const FieldSpec F = field_for(choice.f, choice.p);
        const unsigned n = F.min_level() + static_cast<unsigned>(rng() % 2);
        const unsigned r = 3 + 2 * static_cast<unsigned>(rng() % 3);
        const auto ells = first_primes_in_progression(F.d * ipow(F.p, n), 1'000'000, 5);
        if (ells.empty()) continue;
        const u64 ell = ells[rng() % ells.size()];
        const auto characters = enumerate_characters(F.G());
        const Character chi = characters[rng() % characters.size()];

        std::vector<u64> roots = primitive_roots_upto(ell, ell <= 200 ? ell : 64);
        if (ell > 200) roots = {roots.front(), roots[1 + rng() % (roots.size() - 1)]};
        std::vector<RepresentativeSystem> systems{RepresentativeSystem::canonical(F, n), RepresentativeSystem::randomized(F, n, rng),
                                                  RepresentativeSystem::randomized(F, n, rng)};
        std::optional<unsigned> reference;
        for (u64 eta : roots)
            for (const auto& reps : systems) {
                const auto ctx = ResidualContext::make(F, ell, n, r, eta);
                const unsigned ire = residual_index(ctx, chi, residual_vector(ctx, F.d, reps));
                ++evaluations;
                if (!reference) reference = ire;
                if (ire != *reference) ++failures;
            }
        ++configs;
    }
    res.passed = failures == 0;
    res.detail = std::to_string(configs) + " configurations, " + std::to_string(evaluations) + " evaluations, " + std::to_string(failures) +
                 " mismatches";
    return res;
}

CheckResult check_norm_relations(const CheckOptions&) {
    CheckResult res{4, "norm relations", true, true, ""};
    std::size_t checks = 0, failures = 0;
    for (u64 f : {15, 35}) {
        const FieldSpec F = real_cyclotomic_field(f, 3);
        const unsigned n = F.min_level();
        for (u64 ell : first_primes_in_progression(F.d * ipow(F.p, n), 10'000'000, 3)) {
            const auto ctx = ResidualContext::make(F, ell, n, 3);
            for (u64 b = 1; b <= F.d; ++b) {
                if (F.d % b) continue;
                for (u64 q : prime_divisors(F.d)) {
                    if (q == F.p || F.d % (q * b)) continue;
                    ++checks;
                    if (!check_norm_relation(ctx, q, b)) ++failures;
                }
            }
        }
    }
    res.passed = failures == 0 && checks > 0;
    res.detail = std::to_string(checks) + " relations, " + std::to_string(failures) + " failures";
    return res;
}

CheckResult check_kurihara(const CheckOptions&) {
    CheckResult res{5, "Kurihara-mode equality", true, true, ""};
    std::size_t cases = 0, failures = 0, nontrivial = 0;
    for (u64 f : {1, 5, 7, 8, 9, 12, 13, 16, 20})
        for (u64 p : {3, 5}) {
            const FieldSpec F = field_for(f, p);
            std::vector<Character> eligible;
            for (const auto& chi : enumerate_characters(F.G()))
                if ((p - 1) % chi.order == 0) eligible.push_back(chi);
            for (unsigned n = F.min_level(); n <= 3; ++n)
                for (u64 ell : first_primes_in_progression(F.d * ipow(p, n), 100'000, 2))
                    for (unsigned r : {3u, 5u}) {
                        const auto ctx = ResidualContext::make(F, ell, n, r);
                        const auto v = residual_vector(ctx, F.d);
                        for (const auto& chi : eligible) {
                            const unsigned a = residual_index(ctx, chi, v);
                            const unsigned b = kurihara_index(ctx, chi, v);
                            ++cases;
                            if (a > 0) ++nontrivial;
                            if (a != b) ++failures;
                        }
                    }
        }
    res.passed = failures == 0 && cases > 0;
    res.detail = std::to_string(cases) + " cases (" + std::to_string(nontrivial) + " with ire > 0), " + std::to_string(failures) + " mismatches";
    return res;
}

CheckResult check_linear_algebra(const CheckOptions& options) {
    CheckResult res{6, "span order vs exhaustive enumeration", true, true, ""};
    std::mt19937_64 rng(options.seed + 6);
    struct Shape {
        u64 p;
        unsigned n;
        std::size_t max_order;
    };
    // Groups of order 1, 2, 3.
    const std::vector<std::shared_ptr<const QuotientGroup>> groups{std::make_shared<const QuotientGroup>(1, std::vector<u64>{}),
                                                                   std::make_shared<const QuotientGroup>(3, std::vector<u64>{}),
                                                                   std::make_shared<const QuotientGroup>(7, std::vector<u64>{6})};
    std::size_t instances = 0, failures = 0;
    for (const Shape& shape : {Shape{3, 1, 3}, Shape{3, 2, 2}, Shape{5, 1, 2}}) {
        std::vector<std::shared_ptr<const QuotientGroup>> admissible;
        for (const auto& g : groups)
            if (g->size() <= shape.max_order) admissible.push_back(g);
        for (int i = 0; i < 100; ++i) {
            const RingAmbient amb(admissible[rng() % admissible.size()], shape.p, shape.n);
            std::vector<GroupRingElt> gens;
            const std::size_t count = 1 + rng() % 4;
            for (std::size_t k = 0; k < count; ++k) {
                GroupRingElt x(amb);
                for (Element g = 0; g < amb.size(); ++g) {
                    // Bias towards multiples of p so that proper subgroups occur.
                    u64 c = rng() % amb.modulus();
                    if (rng() % 3 == 0) c = (c * shape.p) % amb.modulus();
                    x.set(g, c);
                }
                gens.push_back(x);
            }
            ++instances;
            if (span_order(gens).valuation != oracles::exhaustive_span_valuation(gens)) ++failures;
        }
    }
    res.passed = failures == 0;
    res.detail = std::to_string(instances) + " instances, " + std::to_string(failures) + " mismatches";
    return res;
}

CheckResult check_dlog(const CheckOptions& options) {
    CheckResult res{7, "discrete-log soundness", true, true, ""};
    std::mt19937_64 rng(options.seed + 7);
    std::size_t random_cases = 0, exhaustive_cases = 0, failures = 0;
    std::uniform_int_distribution<u64> pick_ell(7, 1'000'000);
    while (random_cases < 10'000) {
        u64 ell = pick_ell(rng) | 1;
        if (!is_prime(ell)) continue;
        std::vector<u64> odd;
        for (u64 q : prime_divisors(ell - 1))
            if (q != 2) odd.push_back(q);
        if (odd.empty()) continue;
        const u64 p = odd[rng() % odd.size()];
        const unsigned vmax = valuation(ell - 1, p);
        const unsigned n = 1 + static_cast<unsigned>(rng() % vmax);
        const u64 pn = ipow(p, n);
        const u64 g = pow_mod(2 + rng() % (ell - 3), (ell - 1) / pn, ell);
        if (pow_mod(g, pn / p, ell) == 1) continue;  // order below p^n
        const u64 e = rng() % pn;
        const u64 w = pow_mod(g, e, ell);
        const u64 got = dlog_prime_power(ell, g, w, p, n);
        if (got != e || pow_mod(g, got, ell) != w) ++failures;
        ++random_cases;
    }
    for (u64 p : {3, 5, 7})
        for (unsigned n = 1; ipow(p, n) <= 81; ++n) {
            const u64 pn = ipow(p, n);
            for (u64 ell : first_primes_in_progression(pn, 100'000, 2)) {
                const u64 g = pow_mod(primitive_root(ell), (ell - 1) / pn, ell);
                const PrimePowerLog log(ell, g, p, n);
                for (u64 e = 0; e < pn; ++e) {
                    const u64 w = pow_mod(g, e, ell);
                    if (log(w) != oracles::brute_force_dlog(ell, g, w, pn)) ++failures;
                    ++exhaustive_cases;
                }
            }
        }
    res.passed = failures == 0;
    res.detail = std::to_string(random_cases) + " random round trips, " + std::to_string(exhaustive_cases) + " exhaustive, " +
                 std::to_string(failures) + " failures";
    return res;
}

CheckResult check_worked_example(const CheckOptions&) {
    CheckResult res{8, "worked example F=Q, p=3, l=7", true, true, ""};
    const FieldSpec F = rational_field(3);
    const auto ctx = ResidualContext::make(F, 7, 1, 3, 3);
    // Factors 1 - 3^2 = 6 and 1 - 3^4 = 4 mod 7; squared: 1 and 2; logs base 2: 0 and 1.
    const bool factors = sub_mod(1, pow_mod(3, 2, 7), 7) == 6 && sub_mod(1, pow_mod(3, 4, 7), 7) == 4 && pow_mod(6, 2, 7) == 1 &&
                         pow_mod(4, 2, 7) == 2 && ctx.g_p() == 2;
    const auto v = residual_vector(ctx, 1);
    const Character trivial = enumerate_characters(F.G()).front();
    const unsigned ire = residual_index(ctx, trivial, v);
    const bool direct = oracles::residual_vector_direct(ctx, 1) == v;
    res.passed = factors && v[0] == 1 && ire == 0 && direct;
    res.detail = "coord=" + std::to_string(v[0]) + ", ire=" + std::to_string(ire);
    return res;
}

CheckResult check_nontrivial_experiment(const CheckOptions& options) {
    CheckResult res{9, "nontrivial-index experiment p=37", false, false, ""};
    const FieldSpec F = real_cyclotomic_field(37, 37);
    const auto predicted = predicted_nontrivial_configs(F, 71);
    const auto classes = qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), F.p);
    SearchConfig cfg;
    cfg.n_min = 2;
    cfg.n_max = 3;
    cfg.threads = options.threads;
    std::size_t confirmed = 0, runs = 0;
    std::string first;
    for (const auto& pc : predicted) {
        for (const auto& cls : classes) {
            if (std::find(cls.orbit.begin(), cls.orbit.end(), pc.character) == cls.orbit.end()) continue;
            const auto report = full_run(F, pc.r, cfg, {cls}).front();
            ++runs;
            const bool ok = report.upper_bound_valuation && *report.upper_bound_valuation >= 1 && report.stabilized;
            if (ok) ++confirmed;
            if (first.empty() || (ok && confirmed == 1)) {
                std::ostringstream os;
                os << "chi=(" << pc.character.exponents.front() << ") r=" << pc.r << " predicted v="
                   << (pc.embedded_valuation ? *pc.embedded_valuation : pc.norm_valuation) << " observed bound="
                   << (report.upper_bound_valuation ? std::to_string(*report.upper_bound_valuation) : "none")
                   << (report.stabilized ? " stable" : " unstable");
                first = os.str();
            }
        }
    }
    res.passed = confirmed > 0;
    res.detail = std::to_string(predicted.size()) + " predicted configs, " + std::to_string(runs) + " runs, " + std::to_string(confirmed) +
                 " confirmed; e.g. " + first;
    return res;
}

std::vector<CheckResult> run_check_suite(const CheckOptions& options) {
    return {check_regular_triviality(options), check_generator_law(options), check_invariance(options),
            check_norm_relations(options),     check_kurihara(options),      check_linear_algebra(options),
            check_dlog(options),               check_worked_example(options), check_nontrivial_experiment(options)};
}

std::string format_check(const CheckResult& result) {
    std::ostringstream os;
    os << (result.passed ? "PASS" : "FAIL") << " [" << result.criterion << "] " << result.name;
    if (!result.gating) os << " (non-gating)";
    os << ": " << result.detail;
    return os.str();
}

}  // namespace chindex
