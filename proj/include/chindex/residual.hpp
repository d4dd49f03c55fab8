#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "chindex/fieldspec.hpp"
#include "chindex/group_ring.hpp"
#include "chindex/modarith.hpp"

namespace chindex {

/// Everything fixed by the choice of (ell, n, r, eta) for one field.
class ResidualContext {
  public:
    /// Validates ell == 1 mod d p^n, n >= max(a, 1), r odd >= 3. When eta is
    /// absent the smallest primitive root mod ell is used.
    static ResidualContext make(const FieldSpec& F, u64 ell, unsigned n, unsigned r, std::optional<u64> eta = std::nullopt);

    const FieldSpec& field() const { return field_; }
    u64 p() const { return field_.p; }
    u64 ell() const { return ell_; }
    unsigned n() const { return n_; }
    unsigned r() const { return r_; }
    u64 eta() const { return eta_; }
    /// g_p = eta^{(ell-1)/p^n}, of exact order p^n.
    u64 g_p() const { return g_p_; }
    u64 pn() const { return pn_; }
    RingAmbient ambient() const { return RingAmbient(field_.group, field_.p, n_); }
    const PrimePowerLog& log() const { return *log_; }

  private:
    ResidualContext() = default;

    FieldSpec field_;
    u64 ell_ = 0;
    unsigned n_ = 0;
    unsigned r_ = 0;
    u64 eta_ = 0;
    u64 g_p_ = 0;
    u64 pn_ = 0;
    std::shared_ptr<const PrimePowerLog> log_;
};

/// Choice of the integers a_g (lifting g^{-1}, prime to p) and of the
/// integer representatives of the Galois sets J_{b,n}.
struct RepresentativeSystem {
    /// a[g] is a unit modulo d p^n whose residue mod f lies in the class g^{-1}.
    std::vector<u64> a;
    /// J_{b,n} members are replaced by i + j_offset * b p^n.
    u64 j_offset = 0;

    /// Smallest positive admissible a_g, J members as returned.
    static RepresentativeSystem canonical(const FieldSpec& F, unsigned n);
    /// Uniformly random admissible lifts.
    static RepresentativeSystem randomized(const FieldSpec& F, unsigned n, std::mt19937_64& rng);
};

/// Image of c^F_b(r) in (Z/p^n)[G]: the coefficient of g is the discrete-log
/// coordinate of the component at the prime lambda^g.
GroupRingElt residual_vector(const ResidualContext& ctx, u64 b);
GroupRingElt residual_vector(const ResidualContext& ctx, u64 b, const RepresentativeSystem& reps);

/// Valuation of ire_{r, chi, ell, n}.
unsigned residual_index(const ResidualContext& ctx, const Character& chi, const GroupRingElt& c);
unsigned residual_index(const GroupRingElt& T_chi, unsigned ima_valuation, const GroupRingElt& c);

/// Norm relation between the residual images of c_{qb} and c_b.
bool check_norm_relation(const ResidualContext& ctx, u64 q, u64 b);

/// The (p-1)-th root of unity congruent to x mod p, in Z/p^n.
u64 teichmuller(u64 x, u64 p, unsigned n);

/// Single-component evaluation of the residual index for o(chi) | p - 1.
unsigned kurihara_index(const ResidualContext& ctx, const Character& chi, const GroupRingElt& c);

}  // namespace chindex
