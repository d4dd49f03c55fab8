#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chindex/modarith.hpp"

namespace chindex {

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(u64 m);

/// Tr_{Q_p(zeta_m)/Q_p}(zeta_m^k) as a rational integer, computed by summing
/// x^{k t} over the decomposition group D and reducing modulo Phi_m.
/// Throws std::domain_error("non-rational trace") when the reduction is not
/// constant, which happens exactly when the trace lies in Z_p but not in Z.
std::int64_t trace_root_of_unity(u64 m, u64 k, u64 p);

/// The Galois ring GR(p^n, f) = (Z/p^n)[x]/(P), P a monic lift of the
/// lexicographically first irreducible polynomial of degree f over F_p.
class GaloisRing {
  public:
    using Element = std::vector<u64>;  // f coefficients, constant term first

    GaloisRing(u64 p, unsigned n, unsigned f);

    u64 p() const { return p_; }
    unsigned n() const { return n_; }
    unsigned degree() const { return f_; }
    u64 modulus() const { return q_; }

    Element one() const;
    Element constant(u64 c) const;
    Element mul(const Element& a, const Element& b) const;
    Element add(const Element& a, const Element& b) const;
    Element pow(Element a, u64 e) const;
    bool is_constant(const Element& a) const;

    /// Teichmuller lift of the first primitive element of the residue field
    /// (digits in base p, ascending); it has order p^f - 1.
    const Element& teichmuller_generator() const { return generator_; }

  private:
    u64 p_;
    unsigned n_;
    unsigned f_;
    u64 q_;
    std::vector<u64> poly_;  // monic modulus, f + 1 coefficients
    Element generator_;
};

/// Canonical p-adic embedding of the roots of unity of order m: zeta_m is sent
/// to a fixed root whose p^s-th power is the unramified root
/// T^{(p^f - 1)/m'} of GaloisRing(p, n, ord_{m'} p). For m | p - 1 this is
/// omega(gamma)^{(p-1)/m} with gamma the smallest primitive root mod p.
///
/// Traces of zeta_m^k down to Q_p, reduced mod p^n. Each instance caches the
/// unramified periods for one (m, p, n).
class PadicTraces {
  public:
    PadicTraces(u64 m, u64 p, unsigned n);

    /// Tr_{Q_p(zeta_m)/Q_p}(zeta_m^k) mod p^n.
    u64 trace(u64 k) const;

    /// For m | p - 1: the image of zeta_m^k in Z/p^n.
    u64 root_power(u64 k) const;

    u64 order() const { return m_; }

  private:
    u64 m_;
    u64 p_;
    unsigned n_;
    u64 q_;
    unsigned s_;
    u64 ps_;
    u64 mprime_;
    u64 alpha_;                      // (p^s)^{-1} mod m'
    std::vector<u64> periods_;       // unramified trace of zeta_{m'}^j
    std::vector<u64> roots_;         // zeta_{m'}^j when the extension is trivial
};

/// Ramanujan sum c_{p^s}(k) = sum over t in (Z/p^s)^x of zeta_{p^s}^{k t}.
std::int64_t ramanujan_sum_prime_power(u64 p, unsigned s, u64 k);

}  // namespace chindex
