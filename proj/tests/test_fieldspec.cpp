#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "chindex/fieldspec.hpp"

using namespace chindex;

namespace {

std::multiset<u64> orders_of(const std::vector<Character>& chars) {
    std::multiset<u64> out;
    for (const auto& c : chars) out.insert(c.order);
    return out;
}

std::vector<std::pair<u64, std::vector<u64>>> corpus() {
    return {{1, {}}, {5, {4}}, {7, {6}}, {8, {7}}, {9, {8}}, {12, {11}}, {13, {12}}, {16, {15}}, {20, {19}},
            {13, {12, 3}}, {35, {34}}, {39, {38, 4}}, {63, {62}}};
}

}  // namespace

TEST_CASE("unit_group_structure examples") {
    const auto s5 = unit_group_structure(5);
    CHECK(s5.generators == std::vector<u64>{2});
    CHECK(s5.orders == std::vector<u64>{4});
    const auto s8 = unit_group_structure(8);
    CHECK(s8.generators == std::vector<u64>{7, 5});
    CHECK(s8.orders == std::vector<u64>{2, 2});
    CHECK(unit_group_structure(1).order() == 1);
    CHECK_THROWS_AS(unit_group_structure(6), FieldError);
    for (u64 f : {3, 9, 15, 16, 20, 45, 63, 100}) CHECK(unit_group_structure(f).order() == euler_phi(f));
}

TEST_CASE("quotient_structure examples") {
    const auto F5 = quotient_structure(5, {4}, 3);
    CHECK(F5.G().size() == 2);
    CHECK(F5.conductor == 5);
    const auto Q = quotient_structure(7, {3}, 5);
    CHECK(Q.G().size() == 1);
    CHECK(Q.conductor == 1);
    const auto F7 = quotient_structure(7, {6}, 3);
    CHECK(F7.G().size() == 3);
    CHECK(F7.d == 7);
    CHECK(F7.a == 0);
    CHECK_THROWS_WITH_AS(quotient_structure(7, {2}, 3), doctest::Contains("not totally real"), FieldError);
    CHECK_THROWS_WITH_AS(quotient_structure(5, {4}, 2), doctest::Contains("p must be an odd prime"), FieldError);
}

TEST_CASE("conductor normalization") {
    // Q(sqrt 5) presented inside Q(zeta_15).
    const auto F = quotient_structure(15, {14, 4, 11}, 3);
    CHECK(F.conductor == 5);
    CHECK(F.G().size() == 2);
    const auto again = normalize_conductor(F.conductor, F.subgroup);
    CHECK(again.first == F.conductor);
    CHECK(quotient_structure(again.first, again.second, 3).G().size() == 2);
    const auto F9 = quotient_structure(9, {8}, 3);
    CHECK(F9.a == 2);
    CHECK(F9.d == 1);
    CHECK(F9.min_level() == 2);
}

TEST_CASE("transversal is smallest positive representatives, ascending") {
    const auto F = quotient_structure(13, {12}, 3);
    std::vector<u64> reps;
    for (std::size_t g = 0; g < F.G().size(); ++g) reps.push_back(F.G().rep(static_cast<QuotientGroup::Element>(g)));
    CHECK(reps == std::vector<u64>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("enumerate_characters examples") {
    const auto c4 = real_cyclotomic_field(16, 3);  // (Z/16)^x / {+-1} is cyclic of order 4
    CHECK(orders_of(enumerate_characters(c4.G())) == std::multiset<u64>{1, 2, 4, 4});
    CHECK(enumerate_characters(rational_field(3).G()).size() == 1);
    const auto v4 = quotient_structure(40, {39, 9}, 3);  // Q(sqrt 2, sqrt 5)
    CHECK(v4.G().size() == 4);
    CHECK(orders_of(enumerate_characters(v4.G())) == std::multiset<u64>{1, 2, 2, 2});
}

TEST_CASE("qp_conjugacy_classes examples") {
    const auto F = real_cyclotomic_field(16, 3);
    const auto classes = qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), 3);
    REQUIRE(classes.size() == 3);
    std::multiset<std::size_t> sizes;
    for (const auto& c : classes) sizes.insert(c.orbit.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 1, 2});
    const auto F7 = real_cyclotomic_field(7, 3);
    const auto cl7 = qp_conjugacy_classes(F7.G(), enumerate_characters(F7.G()), 3);
    REQUIRE(cl7.size() == 2);
    CHECK(cl7[0].degree == 1);
    CHECK(cl7[1].orbit.size() == 2);
    CHECK(cl7[1].degree == 2);
}

TEST_CASE("qp_degree examples") {
    CHECK(qp_degree(4, 3) == 2);
    CHECK(qp_degree(1, 3) == 1);
    CHECK(qp_degree(3, 3) == 2);
    CHECK(qp_degree(9, 3) == 6);
    CHECK(qp_degree(11, 5) == 5);
}

TEST_CASE("class sizes partition G and equal the degree") {
    for (u64 p : {3, 5, 7}) {
        for (const auto& [f, H] : corpus()) {
            const auto F = quotient_structure(f, H, p);
            const auto classes = qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), p);
            std::size_t total = 0;
            for (const auto& c : classes) {
                total += c.orbit.size();
                CHECK(c.orbit.size() == c.degree);
                CHECK(c.degree == qp_degree(c.representative.order, p));
                for (const auto& m : c.orbit) CHECK(m.order == c.representative.order);
            }
            CHECK(total == F.G().size());
        }
    }
}

TEST_CASE("galois_representatives examples") {
    const auto Q = rational_field(3);
    CHECK(galois_representatives(Q, 1, 1) == std::vector<u64>{1, 2});
    const auto F5 = quotient_structure(5, {4}, 3);
    CHECK(galois_representatives(F5, 5, 1) == std::vector<u64>{1, 4, 11, 14});
    CHECK(galois_representatives(F5, 1, 1) == std::vector<u64>{1, 2});
    CHECK_THROWS(galois_representatives(F5, 2, 1));
    CHECK_THROWS(galois_representatives(quotient_structure(9, {8}, 3), 1, 1));
}

TEST_CASE("galois_representatives cardinality is [Q(zeta_{d p^n}) : F]") {
    for (u64 p : {3, 5}) {
        for (const auto& [f, H] : corpus()) {
            const auto F = quotient_structure(f, H, p);
            for (unsigned n = F.min_level(); n <= F.min_level() + 1; ++n) {
                const auto J = galois_representatives(F, F.d, n);
                CHECK(J.size() * F.G().size() == euler_phi(F.d * ipow(p, n)));
            }
        }
    }
}

TEST_CASE("b = d agrees with the direct definition") {
    for (const auto& [f, H] : corpus()) {
        const auto F = quotient_structure(f, H, 3);
        const unsigned n = F.min_level();
        const u64 m = F.d * ipow(3, n);
        std::vector<u64> direct;
        for (u64 t = 1; t < m; ++t)
            if (std::gcd(t, m) == 1 && F.G().in_subgroup(t % F.conductor)) direct.push_back(t);
        CHECK(galois_representatives(F, F.d, n) == direct);
    }
}
