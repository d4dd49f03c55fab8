#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "chindex/fieldspec.hpp"
#include "chindex/linalg.hpp"
#include "chindex/modarith.hpp"

namespace chindex {

/// Coefficient ring Z/p^n together with the group G of a group ring.
struct RingAmbient {
    std::shared_ptr<const QuotientGroup> group;
    u64 p = 3;
    unsigned n = 1;

    RingAmbient() = default;
    RingAmbient(std::shared_ptr<const QuotientGroup> g, u64 p_, unsigned n_);

    u64 modulus() const { return modulus_; }
    std::size_t size() const { return group->size(); }
    bool operator==(const RingAmbient& other) const;

  private:
    u64 modulus_ = 3;
};

/// An element sum_g c_g g of (Z/p^n)[G]; coefficient g sits at index g.
class GroupRingElt {
  public:
    using Element = QuotientGroup::Element;

    explicit GroupRingElt(RingAmbient ambient);

    static GroupRingElt zero(const RingAmbient& ambient) { return GroupRingElt(ambient); }
    static GroupRingElt one(const RingAmbient& ambient) { return basis(ambient, 0); }
    static GroupRingElt basis(const RingAmbient& ambient, Element g);
    static GroupRingElt from_coefficients(const RingAmbient& ambient, const std::vector<u64>& coeffs);

    const RingAmbient& ambient() const { return ambient_; }
    const DenseVector<u64>& coefficients() const { return coeffs_; }
    u64 operator[](Element g) const { return coeffs_(g); }
    void set(Element g, u64 value) { coeffs_(g) = value % ambient_.modulus(); }
    void add_to(Element g, u64 value);

    /// Left multiplication by the group element h: coefficient at h*g becomes c_g.
    GroupRingElt act(Element h) const;

    GroupRingElt operator+(const GroupRingElt& other) const;
    GroupRingElt operator-(const GroupRingElt& other) const;
    GroupRingElt scaled(u64 factor) const;
    bool operator==(const GroupRingElt& other) const;
    bool is_zero() const;

  private:
    void require_same(const GroupRingElt& other) const;

    RingAmbient ambient_;
    DenseVector<u64> coeffs_;
};

/// Convolution product; throws std::invalid_argument on ambient mismatch.
GroupRingElt ring_multiply(const GroupRingElt& x, const GroupRingElt& y);

/// S_chi = sum of the elements of Ker chi.
GroupRingElt kernel_sum(const RingAmbient& ambient, const Character& chi);

/// The explicit generator T_chi of the chi-part of (Z/p^n)[G].
GroupRingElt build_T_chi(const RingAmbient& ambient, const Character& chi);

struct SpanOrderResult {
    unsigned valuation = 0;
    std::vector<unsigned> divisor_valuations;
};

inline constexpr std::size_t kDefaultSpanGroupCap = 256;

/// Order p^v of the Z/p^n-span of the given elements inside (Z/p^n)^{#G}.
SpanOrderResult span_order(const std::vector<GroupRingElt>& generators, std::size_t group_cap = kDefaultSpanGroupCap);

/// Order of the Z_p[G]-span of T_chi * c, i.e. the span of {g T_chi c}.
SpanOrderResult chi_span_order(const Character& chi, const GroupRingElt& c);
SpanOrderResult chi_span_order(const GroupRingElt& T_chi, const GroupRingElt& c);

/// ima valuation n * d_chi.
unsigned ima(const Character& chi, u64 p, unsigned n);

/// Order of the chi-part cut out by linear conditions (Ker chi invariance,
/// the prime-to-p idempotent and, when p | o(chi), the norm of the order-p
/// subgroup); built without reference to T_chi.
unsigned chi_part_order_oracle(const RingAmbient& ambient, const Character& chi);

}  // namespace chindex
