#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "chindex/bernoulli.hpp"

using namespace chindex;

namespace {

DirichletCharacter quadratic_mod(u64 f) {
    DirichletCharacter chi;
    chi.modulus = f;
    chi.order = 2;
    chi.values.assign(f, -1);
    for (u64 a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        chi.values[a] = pow_mod(a, (f - 1) / 2, f) == 1 ? 0 : 1;  // Legendre symbol, f prime
    }
    return chi;
}

ExactRational rational_value(const CyclotomicRational& x) {
    REQUIRE(x.is_rational());
    return x.coefficients().front();
}

}  // namespace

TEST_CASE("bernoulli examples") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == ExactRational(-1, 2));
    CHECK(bernoulli(2) == ExactRational(1, 6));
    CHECK(bernoulli(12) == ExactRational(-691, 2730));
    for (unsigned k = 3; k < 60; k += 2) CHECK(bernoulli(k) == 0);
}

TEST_CASE("bernoulli numbers satisfy the defining recurrence") {
    for (unsigned m = 1; m < 40; ++m) {
        ExactRational sum = 0;
        mpz_class binom = 1;
        for (unsigned k = 0; k < m + 1; ++k) {
            sum += ExactRational(binom) * bernoulli(k);
            binom = binom * (m + 1 - k) / (k + 1);
        }
        CHECK(sum == 0);
    }
}

TEST_CASE("is_regular examples") {
    CHECK(is_regular(3));
    CHECK(is_regular(5));
    CHECK_FALSE(is_regular(37));
    CHECK_FALSE(is_regular(59));
    CHECK_FALSE(is_regular(67));
    std::vector<u64> irregular;
    for (u64 p = 3; p < 110; ++p)
        if (is_prime(p) && !is_regular(p)) irregular.push_back(p);
    CHECK(irregular == std::vector<u64>{37, 59, 67, 101, 103});
}

TEST_CASE("generalized_bernoulli examples") {
    CHECK(rational_value(generalized_bernoulli(DirichletCharacter::trivial(), 2)) == ExactRational(1, 6));
    CHECK(generalized_bernoulli(quadratic_mod(5), 1).is_zero());
    CHECK(rational_value(generalized_bernoulli(quadratic_mod(3), 1)) == ExactRational(-1, 3));
    // Trivial character: B_{1,1} = +1/2 while B_1 = -1/2.
    CHECK(rational_value(generalized_bernoulli(DirichletCharacter::trivial(), 1)) == ExactRational(1, 2));
    CHECK_THROWS(generalized_bernoulli(DirichletCharacter::trivial(5), 2));
}

TEST_CASE("trivial character of conductor 1 reproduces B_k") {
    for (unsigned k = 2; k < 30; ++k) CHECK(rational_value(generalized_bernoulli(DirichletCharacter::trivial(), k)) == bernoulli(k));
}

TEST_CASE("class number formula for imaginary quadratic characters") {
    // B_{1,chi} = -2 h / w for the odd quadratic character of Q(sqrt -p), p = 3 mod 4, p > 3.
    const std::vector<std::pair<u64, int>> cases{{7, 1}, {11, 1}, {23, 3}, {31, 3}, {47, 5}, {71, 7}};
    for (auto [p, h] : cases) CHECK(rational_value(generalized_bernoulli(quadratic_mod(p), 1)) == ExactRational(-h));
}

TEST_CASE("parity vanishing") {
    for (u64 p : {5, 7, 11, 13})
        for (u64 j = 0; j < p - 1; ++j) {
            const auto psi = DirichletCharacter::teichmuller_power(p, j).primitive();
            for (unsigned k = 2; k <= 8; ++k)
                if (psi.is_even() != (k % 2 == 0)) CHECK(generalized_bernoulli(psi, k).is_zero());
        }
}

TEST_CASE("Kummer congruence locates the irregular pair (37, 32)") {
    // B_{2, omega^{30}} / 2 is congruent to B_32 / 32 mod 37; its conjugate is B_{2, omega^6}.
    const auto divisible = [](u64 j) {
        const ExactRational N = generalized_bernoulli(DirichletCharacter::teichmuller_power(37, j).primitive(), 2).norm();
        REQUIRE(N != 0);
        mpz_class num = N.get_num();
        return mpz_divisible_ui_p(num.get_mpz_t(), 37) != 0;
    };
    CHECK(divisible(30));
    CHECK_FALSE(divisible(28));
    CHECK_FALSE(divisible(0));
}

TEST_CASE("cyclotomic arithmetic") {
    // zeta_4^2 = -1 and the norm of 1 - zeta_5 is 5.
    const auto i = CyclotomicRational::from_powers(4, {0, 1, 0, 0});
    CHECK(rational_value(i * i) == -1);
    const auto x = CyclotomicRational::from_powers(5, {1, -1, 0, 0, 0});
    CHECK(x.norm() == 5);
    CHECK(CyclotomicRational::from_powers(3, {2, 0, 0}).norm() == 4);
}

TEST_CASE("predicted_nontrivial_configs examples") {
    for (u64 p : {3, 5, 7}) CHECK(predicted_nontrivial_configs(rational_field(p), 15).empty());
    const auto p5 = predicted_nontrivial_configs(5, 50, 7);
    for (const auto& cfg : p5) {
        CHECK(cfg.conductor <= 50);
        CHECK(cfg.norm_valuation > 0);
        CHECK(cfg.r <= 7);
    }
    const auto p37 = predicted_nontrivial_configs(real_cyclotomic_field(37, 37), 71);
    REQUIRE_FALSE(p37.empty());
    const bool trivial_r5 = std::any_of(p37.begin(), p37.end(), [](const PredictedConfig& c) { return c.character.order == 1 && c.r == 5; });
    CHECK(trivial_r5);
    const auto q37 = predicted_nontrivial_configs(rational_field(37), 71);
    std::vector<unsigned> rs;
    for (const auto& c : q37) rs.push_back(c.r);
    CHECK(rs == std::vector<unsigned>{5, 41});
}
