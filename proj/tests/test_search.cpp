#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "chindex/search.hpp"

using namespace chindex;

namespace {

SearchConfig config(u64 bound, unsigned n_min, unsigned n_max, std::size_t K) {
    SearchConfig cfg;
    cfg.ell_bound = bound;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    cfg.primes_per_level = K;
    return cfg;
}

CharacterClass class_of_order(const FieldSpec& F, u64 order) {
    for (const auto& cls : qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), F.p))
        if (cls.representative.order == order) return cls;
    throw std::logic_error("no such class");
}

CandidateRecord record(u64 ell, unsigned n, unsigned ire, unsigned ima) { return {ell, n, ire, ima, ire < ima}; }

}  // namespace

TEST_CASE("scan_candidates examples") {
    const FieldSpec Q = rational_field(3);
    const auto records = scan_candidates(Q, class_of_order(Q, 1), 3, config(100, 1, 1, 3));
    REQUIRE(records.size() == 3);
    CHECK(records[0].ell == 7);
    CHECK(records[1].ell == 13);
    CHECK(records[2].ell == 19);
    for (const auto& r : records) {
        CHECK(r.n == 1);
        CHECK(r.ima == 1);
    }
    CHECK(records[0] == record(7, 1, 0, 1));
    CHECK(scan_candidates(Q, class_of_order(Q, 1), 3, config(6, 1, 1, 3)).empty());
}

TEST_CASE("scan ordering is ascending ell within ascending n") {
    const FieldSpec F = real_cyclotomic_field(7, 3);
    const auto records = scan_candidates(F, class_of_order(F, 3), 5, config(1'000'000, 1, 3, 4));
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& a = records[i - 1];
        const auto& b = records[i];
        CHECK((a.n < b.n || (a.n == b.n && a.ell < b.ell)));
    }
    for (const auto& r : records) {
        CHECK(r.accepted == (r.ire < r.ima));
        CHECK(r.ire <= r.ima);
        CHECK((r.ell - 1) % (7 * ipow(3, r.n)) == 0);
    }
}

TEST_CASE("index_upper_bound examples") {
    const auto rep = index_upper_bound({record(7, 1, 0, 1), record(13, 1, 0, 1), record(19, 1, 1, 2)}, 2);
    CHECK(rep.upper_bound_valuation == 0u);
    const auto none = index_upper_bound({record(7, 1, 1, 1), record(13, 1, 1, 1)}, 2);
    CHECK_FALSE(none.upper_bound_valuation.has_value());
    CHECK_FALSE(none.witness.has_value());
    CHECK_FALSE(none.stabilized);
    CHECK(index_upper_bound({}, 1).upper_bound_valuation == std::nullopt);
}

TEST_CASE("stabilization needs W productive levels with a constant minimum") {
    const std::vector<CandidateRecord> trail{record(7, 1, 1, 2), record(19, 2, 1, 4), record(37, 3, 1, 6)};
    CHECK(index_upper_bound(trail, 2).stabilized);
    CHECK(index_upper_bound(trail, 3).stabilized);
    CHECK_FALSE(index_upper_bound(trail, 4).stabilized);
    const std::vector<CandidateRecord> dropping{record(7, 1, 1, 2), record(19, 2, 1, 4), record(37, 3, 0, 6)};
    CHECK_FALSE(index_upper_bound(dropping, 2).stabilized);
    // An unproductive level in between does not count towards the window.
    const std::vector<CandidateRecord> gap{record(7, 1, 1, 2), record(19, 2, 4, 4), record(37, 3, 1, 6)};
    CHECK(index_upper_bound(gap, 2).stabilized);
    CHECK_FALSE(index_upper_bound(gap, 3).stabilized);
}

TEST_CASE("the bound is the minimum of accepted ire and never increases") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<CandidateRecord> trail;
        std::optional<unsigned> previous;
        for (int k = 0; k < 30; ++k) {
            const unsigned n = 1 + static_cast<unsigned>(k / 6);
            const unsigned ima_v = n * (1 + rng() % 2);
            trail.push_back(record(1000 + k, n, static_cast<unsigned>(rng() % (ima_v + 1)), ima_v));
            const auto rep = index_upper_bound(trail, 2);
            std::optional<unsigned> expected;
            for (const auto& r : trail)
                if (r.accepted && (!expected || r.ire < *expected)) expected = r.ire;
            CHECK(rep.upper_bound_valuation == expected);
            if (rep.witness) {
                CHECK(rep.witness->accepted);
                CHECK(rep.witness->ire == *expected);
            }
            if (previous) {
                REQUIRE(rep.upper_bound_valuation.has_value());
                CHECK(*rep.upper_bound_valuation <= *previous);
            }
            previous = rep.upper_bound_valuation;
        }
    }
}

TEST_CASE("larger bounds or more primes never raise the reported bound") {
    for (u64 f : {7, 13, 19}) {
        const FieldSpec F = real_cyclotomic_field(f, 3);
        for (unsigned r : {3u, 5u}) {
            const auto small = full_run(F, r, config(200'000, 1, 2, 2));
            const auto bigger = full_run(F, r, config(2'000'000, 1, 2, 2));
            const auto more = full_run(F, r, config(200'000, 1, 2, 6));
            REQUIRE(small.size() == bigger.size());
            for (std::size_t i = 0; i < small.size(); ++i) {
                if (!small[i].upper_bound_valuation) continue;
                CHECK(bigger[i].upper_bound_valuation.value() <= *small[i].upper_bound_valuation);
                CHECK(more[i].upper_bound_valuation.value() <= *small[i].upper_bound_valuation);
            }
        }
    }
}

TEST_CASE("sampled level minimum is at least the minimum over all primes") {
    const FieldSpec F = real_cyclotomic_field(13, 3);
    for (const auto& cls : qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), 3)) {
        const auto all = scan_candidates(F, cls, 3, config(20'000, 1, 1, 1'000'000));
        const auto sample = scan_candidates(F, cls, 3, config(20'000, 1, 1, 3));
        REQUIRE(all.size() >= sample.size());
        const auto a = index_upper_bound(all, 1).upper_bound_valuation;
        const auto s = index_upper_bound(sample, 1).upper_bound_valuation;
        if (s) CHECK(a.value() <= *s);
        for (std::size_t i = 0; i < sample.size(); ++i) CHECK(sample[i] == all[i]);
    }
}

TEST_CASE("full_run examples") {
    const auto q5 = full_run(rational_field(5), 3, SearchConfig{});
    REQUIRE(q5.size() == 1);
    CHECK(q5[0].upper_bound_valuation == 0u);
    CHECK(q5[0].stabilized);
    CHECK(q5[0].semantics == kBoundSemantics);

    const FieldSpec F5 = quotient_structure(5, {4}, 3);
    const auto two = full_run(F5, 3, SearchConfig{});
    REQUIRE(two.size() == 2);
    for (const auto& rep : two) CHECK(rep.upper_bound_valuation.has_value());

    CHECK_THROWS_WITH(full_run(F5, 3, config(1000, 4, 3, 2)), doctest::Contains("below n_min"));
    CHECK_THROWS_WITH(full_run(F5, 4, SearchConfig{}), doctest::Contains("r must be odd"));
    CHECK_THROWS_WITH(full_run(F5, 1, SearchConfig{}), doctest::Contains("r must be odd"));
    CHECK_THROWS(full_run(real_cyclotomic_field(9, 3), 3, config(1000, 1, 3, 2)));
}

TEST_CASE("runs are deterministic across thread counts") {
    const FieldSpec F = real_cyclotomic_field(13, 3);
    SearchConfig one = config(1'000'000, 1, 3, 4);
    one.threads = 1;
    SearchConfig many = one;
    many.threads = 4;
    const auto a = full_run(F, 5, one);
    const auto b = full_run(F, 5, many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].candidates == b[i].candidates);
        CHECK(a[i].upper_bound_valuation == b[i].upper_bound_valuation);
        CHECK(a[i].stabilized == b[i].stabilized);
    }
}

TEST_CASE("regular primes give trivial index over Q") {
    for (u64 p : {3, 5, 7})
        for (unsigned r : {3u, 5u}) {
            const auto rep = full_run(rational_field(p), r, config(100'000, 0, 6, 4)).front();
            CHECK(rep.upper_bound_valuation == 0u);
            CHECK(rep.stabilized);
        }
}

TEST_CASE("real quadratic fields at p = 3 with 3 inert") {
    // Q(sqrt 257) has class number 3; Q(sqrt 5), Q(sqrt 2), Q(sqrt 41) have class number 1.
    struct Case {
        u64 f, h;
        unsigned expected;
    };
    for (const Case& c : {Case{257, 9, 1}, Case{5, 4, 0}, Case{8, 7, 0}, Case{41, 36, 0}}) {
        const FieldSpec F = quotient_structure(c.f, {c.h}, 3);
        REQUIRE(F.G().size() == 2);
        const auto reports = full_run(F, 3, SearchConfig{});
        const auto& quad = reports.at(1);
        CAPTURE(c.f);
        CHECK(quad.character_class.representative.order == 2);
        CHECK(quad.upper_bound_valuation == c.expected);
        CHECK(quad.stabilized);
    }
}

TEST_CASE("trivial class picks up the Euler factor at d") {
    // v_3(1 - 5^2) = 1, v_3(1 - 17^2) = 2.
    const auto f5 = full_run(quotient_structure(5, {4}, 3), 3, SearchConfig{}).front();
    CHECK(f5.upper_bound_valuation == 1u);
    const auto f17 = full_run(quotient_structure(17, {9}, 3), 3, SearchConfig{}).front();
    CHECK(f17.upper_bound_valuation == 2u);
}
