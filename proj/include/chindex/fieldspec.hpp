#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chindex/modarith.hpp"

namespace chindex {

/// Raised for field descriptions that do not define a real abelian field.
class FieldError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Independent generators of a finite abelian group, given as residues
/// modulo `modulus`, each with its exact order.
struct AbelianStructure {
    u64 modulus = 1;
    std::vector<u64> generators;
    std::vector<u64> orders;

    u64 order() const;
};

/// Generators of (Z/f)^x built by CRT from its prime-power factors: a
/// primitive root for odd prime powers, {-1, 5} for 2^e with e >= 3.
AbelianStructure unit_group_structure(u64 f);

/// The finite abelian group G = (Z/f)^x / H. Elements are indexed 0..#G-1 by
/// their smallest positive coset representative in ascending order, so the
/// identity is element 0 (representative 1).
class QuotientGroup {
  public:
    using Element = std::uint32_t;
    static constexpr std::size_t kMaxGroupOrder = 4096;

    QuotientGroup(u64 modulus, const std::vector<u64>& subgroup_generators);

    u64 modulus() const { return modulus_; }
    std::size_t size() const { return reps_.size(); }

    /// Number of residues of (Z/f)^x in the subgroup H.
    std::size_t subgroup_size() const { return subgroup_size_; }

    /// Class of an integer prime to the modulus.
    Element class_of(u64 t) const;
    bool in_subgroup(u64 t) const { return class_of(t) == 0; }

    u64 rep(Element g) const { return reps_[g]; }
    Element mul(Element a, Element b) const { return table_[std::size_t{a} * size() + b]; }
    Element inv(Element a) const { return inverse_[a]; }
    Element pow(Element a, u64 e) const;
    u64 element_order(Element a) const;

    /// Independent generators (as elements) in invariant-factor order:
    /// orders[i+1] divides orders[i].
    const std::vector<Element>& generators() const { return generators_; }
    const std::vector<u64>& generator_orders() const { return generator_orders_; }
    AbelianStructure structure() const;

    /// Exponents c_i with g = prod generators[i]^c_i.
    const std::vector<u64>& coordinates(Element g) const { return coords_[g]; }

  private:
    void compute_structure();

    u64 modulus_;
    std::size_t subgroup_size_ = 0;
    std::vector<std::int32_t> class_;  // residue -> element, -1 for non-units
    std::vector<u64> reps_;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    std::vector<Element> generators_;
    std::vector<u64> generator_orders_;
    std::vector<std::vector<u64>> coords_;
};

/// The real abelian field F with Galois group G = (Z/f)^x / H, together with
/// the decomposition f = d * p^a of its conductor.
struct FieldSpec {
    u64 conductor = 1;
    u64 p = 3;
    u64 d = 1;
    unsigned a = 0;
    /// Canonical generating set of H (greedy, smallest residues first).
    std::vector<u64> subgroup;
    std::shared_ptr<const QuotientGroup> group;

    const QuotientGroup& G() const { return *group; }
    /// Smallest admissible level max(a, 1).
    unsigned min_level() const { return a > 1 ? a : 1; }
};

/// Conductor of the field fixed by <H> in Q(zeta_f), together with the image
/// of H in (Z/conductor)^x. Idempotent.
std::pair<u64, std::vector<u64>> normalize_conductor(u64 f, const std::vector<u64>& subgroup);

/// Build the field for (f, H) at the odd prime p; normalizes the conductor.
/// Throws FieldError if -1 is not in <H> or f is malformed.
FieldSpec quotient_structure(u64 f, const std::vector<u64>& subgroup, u64 p);

FieldSpec rational_field(u64 p);
FieldSpec real_cyclotomic_field(u64 f, u64 p);

/// A character of G with values chi(gen_i) = zeta_{o_i}^{exponents[i]}.
struct Character {
    std::vector<u64> exponents;
    u64 order = 1;
    /// exponents rescaled so that chi(gen_i) = zeta_order^{value_exponents[i]}.
    std::vector<u64> value_exponents;

    bool operator==(const Character& other) const { return exponents == other.exponents; }
};

Character make_character(const QuotientGroup& G, std::vector<u64> exponents);

/// chi(g) = zeta_{chi.order}^k, returns k in [0, order).
u64 character_value(const QuotientGroup& G, const Character& chi, QuotientGroup::Element g);

/// chi^t.
Character character_power(const QuotientGroup& G, const Character& chi, u64 t);

bool in_kernel(const QuotientGroup& G, const Character& chi, QuotientGroup::Element g);

/// All #G characters, lexicographic in the exponent vector.
std::vector<Character> enumerate_characters(const QuotientGroup& G);

/// d_chi = phi(p^s) * ord_{m'}(p) for o(chi) = p^s m'.
u64 qp_degree(u64 character_order, u64 p);

/// The subgroup D of (Z/m)^x whose orbits are the Q_p-conjugacy classes of
/// characters of order m: generated by p on the prime-to-p part together
/// with all of (Z/p^s)^x.
std::vector<u64> qp_galois_subgroup(u64 m, u64 p);

struct CharacterClass {
    Character representative;
    std::vector<Character> orbit;
    u64 degree = 1;
};

std::vector<CharacterClass> qp_conjugacy_classes(const QuotientGroup& G, const std::vector<Character>& characters, u64 p);

/// Representatives in [1, b p^n) of Gal(Q(zeta_{b p^n}) / Q(zeta_{b p^a}) cap F).
/// For b = d this is the set of t in (Z/d p^n)^x whose class mod f lies in H.
std::vector<u64> galois_representatives(const FieldSpec& F, u64 b, unsigned n);

std::string describe(const FieldSpec& F);

}  // namespace chindex
