#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "chindex/fieldspec.hpp"

namespace chindex {

using ExactRational = mpq_class;

/// B_k with B_1 = -1/2. Memoized; safe to call concurrently.
ExactRational bernoulli(unsigned k);

/// B_k(x) = sum_j binom(k, j) B_j x^{k-j}. Note B_1(1) = +1/2.
ExactRational bernoulli_polynomial(unsigned k, const ExactRational& x);

/// True iff p divides none of the numerators of B_2, B_4, ..., B_{p-3}.
bool is_regular(u64 p);

/// An element of Q(zeta_m) in the power basis modulo Phi_m.
class CyclotomicRational {
  public:
    explicit CyclotomicRational(u64 m);

    /// sum_e weights[e] zeta_m^e, reduced modulo Phi_m.
    static CyclotomicRational from_powers(u64 m, const std::vector<ExactRational>& weights);

    u64 order() const { return m_; }
    const std::vector<ExactRational>& coefficients() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;

    CyclotomicRational operator*(const CyclotomicRational& other) const;
    CyclotomicRational scaled(const ExactRational& factor) const;

    /// N_{Q(zeta_m)/Q}, the determinant of multiplication by this element.
    ExactRational norm() const;

  private:
    u64 m_;
    std::vector<ExactRational> coeffs_;
};

/// A Dirichlet character modulo `modulus` with values zeta_order^{values[a]}
/// (values[a] = -1 when gcd(a, modulus) > 1).
struct DirichletCharacter {
    u64 modulus = 1;
    u64 order = 1;
    std::vector<std::int64_t> values;

    static DirichletCharacter trivial(u64 modulus = 1);
    /// omega^j modulo p, with omega(gamma) = zeta_{p-1} for gamma the smallest primitive root.
    static DirichletCharacter teichmuller_power(u64 p, u64 j);
    /// The character of G = Gal(F/Q) read as a character modulo the conductor of F.
    static DirichletCharacter from_field_character(const FieldSpec& F, const Character& chi);

    u64 conductor() const;
    bool is_primitive() const { return conductor() == modulus; }
    DirichletCharacter primitive() const;
    bool is_even() const;
};

/// Product, as a character modulo lcm of the moduli (not primitivized).
DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);

/// B_{k, psi} = f^{k-1} sum_{a=1}^{f} psi(a) B_k(a/f) in Q(zeta_{o(psi)}); psi must be primitive.
/// For the trivial character of conductor 1 this gives B_{1,1} = +1/2, unlike B_1 = -1/2.
CyclotomicRational generalized_bernoulli(const DirichletCharacter& psi, unsigned k);

struct PredictedConfig {
    u64 conductor = 1;       // conductor of the field the character lives on
    Character character;     // character of that field's Galois group
    unsigned r = 3;
    unsigned norm_valuation = 0;
    /// Valuation at the canonical embedding, when the values lie in Z_p.
    std::optional<unsigned> embedded_valuation;
};

/// Configurations (chi, r) of one field whose value B_{r, psi} / r, with
/// psi = chi * omega^{1 - 2r}, has positive p-adic valuation (at the canonical
/// embedding when available, otherwise in norm).
std::vector<PredictedConfig> predicted_nontrivial_configs(const FieldSpec& F, unsigned r_bound);

/// The same scan over the real cyclotomic fields of conductor up to the bound,
/// each character taken once at its exact conductor.
std::vector<PredictedConfig> predicted_nontrivial_configs(u64 p, u64 conductor_bound, unsigned r_bound);

}  // namespace chindex
