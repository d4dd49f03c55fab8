#include "chindex/group_ring.hpp"

#include <string>

#include "chindex/cyclotomic.hpp"

namespace chindex {

using Element = QuotientGroup::Element;

RingAmbient::RingAmbient(std::shared_ptr<const QuotientGroup> g, u64 p_, unsigned n_)
    : group(std::move(g)), p(p_), n(n_), modulus_(ipow(p_, n_)) {
    if (!group) throw std::invalid_argument("group ring needs a group");
    if (n_ == 0) throw std::invalid_argument("group ring level must be positive");
}

bool RingAmbient::operator==(const RingAmbient& other) const {
    if (p != other.p || n != other.n) return false;
    if (group == other.group) return true;
    if (group->modulus() != other.group->modulus() || group->size() != other.group->size()) return false;
    for (std::size_t g = 0; g < group->size(); ++g)
        if (group->rep(static_cast<Element>(g)) != other.group->rep(static_cast<Element>(g))) return false;
    return true;
}

GroupRingElt::GroupRingElt(RingAmbient ambient) : ambient_(std::move(ambient)), coeffs_(DenseVector<u64>::Zero(ambient_.size())) {}

GroupRingElt GroupRingElt::basis(const RingAmbient& ambient, Element g) {
    GroupRingElt e(ambient);
    e.coeffs_(g) = 1 % ambient.modulus();
    return e;
}

GroupRingElt GroupRingElt::from_coefficients(const RingAmbient& ambient, const std::vector<u64>& coeffs) {
    if (coeffs.size() != ambient.size())
        throw std::invalid_argument("expected " + std::to_string(ambient.size()) + " coefficients, got " + std::to_string(coeffs.size()));
    GroupRingElt e(ambient);
    for (std::size_t g = 0; g < coeffs.size(); ++g) e.coeffs_(g) = coeffs[g] % ambient.modulus();
    return e;
}

void GroupRingElt::add_to(Element g, u64 value) {
    const u64 q = ambient_.modulus();
    coeffs_(g) = add_mod(coeffs_(g), value % q, q);
}

GroupRingElt GroupRingElt::act(Element h) const {
    GroupRingElt out(ambient_);
    const auto& G = *ambient_.group;
    for (Element g = 0; g < G.size(); ++g) out.coeffs_(G.mul(h, g)) = coeffs_(g);
    return out;
}

void GroupRingElt::require_same(const GroupRingElt& other) const {
    if (!(ambient_ == other.ambient_)) throw std::invalid_argument("group ring elements live in different rings");
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& other) const {
    require_same(other);
    GroupRingElt out(ambient_);
    const u64 q = ambient_.modulus();
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) out.coeffs_(i) = add_mod(coeffs_(i), other.coeffs_(i), q);
    return out;
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& other) const {
    require_same(other);
    GroupRingElt out(ambient_);
    const u64 q = ambient_.modulus();
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) out.coeffs_(i) = sub_mod(coeffs_(i), other.coeffs_(i), q);
    return out;
}

GroupRingElt GroupRingElt::scaled(u64 factor) const {
    GroupRingElt out(ambient_);
    const u64 q = ambient_.modulus();
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) out.coeffs_(i) = mul_mod(coeffs_(i), factor % q, q);
    return out;
}

bool GroupRingElt::operator==(const GroupRingElt& other) const { return ambient_ == other.ambient_ && coeffs_ == other.coeffs_; }

bool GroupRingElt::is_zero() const { return (coeffs_.array() == 0).all(); }

GroupRingElt ring_multiply(const GroupRingElt& x, const GroupRingElt& y) {
    if (!(x.ambient() == y.ambient())) throw std::invalid_argument("ring_multiply: ambient mismatch");
    const auto& G = *x.ambient().group;
    const u64 q = x.ambient().modulus();
    GroupRingElt out(x.ambient());
    for (Element a = 0; a < G.size(); ++a) {
        const u64 ca = x[a];
        if (ca == 0) continue;
        for (Element b = 0; b < G.size(); ++b) {
            const u64 cb = y[b];
            if (cb) out.add_to(G.mul(a, b), mul_mod(ca, cb, q));
        }
    }
    return out;
}

GroupRingElt kernel_sum(const RingAmbient& ambient, const Character& chi) {
    GroupRingElt S(ambient);
    for (Element g = 0; g < ambient.size(); ++g)
        if (in_kernel(*ambient.group, chi, g)) S.set(g, 1);
    return S;
}

namespace {

/// The first element of G taking each character value, indexed by value exponent.
std::vector<std::int64_t> value_transversal(const QuotientGroup& G, const Character& chi) {
    std::vector<std::int64_t> first(chi.order, -1);
    for (Element g = 0; g < G.size(); ++g) {
        const u64 k = character_value(G, chi, g);
        if (first[k] < 0) first[k] = g;
    }
    return first;
}

struct PrimeToPData {
    u64 mprime;
    u64 ps;
    std::vector<std::pair<Element, u64>> delta;  // (lift, exponent of chi(delta) as a power of zeta_{m'})
    std::int64_t h = -1;                         // element of value zeta_p, when p | o
};

PrimeToPData split_character(const QuotientGroup& G, const Character& chi, u64 p) {
    PrimeToPData out;
    const unsigned s = valuation(chi.order, p);
    out.ps = ipow(p, s);
    out.mprime = chi.order / out.ps;
    const auto first = value_transversal(G, chi);
    for (u64 k = 0; k < chi.order; k += out.ps) out.delta.emplace_back(static_cast<Element>(first[k]), k / out.ps);
    // First element whose value has exact order p; the same for every conjugate of chi.
    if (s > 0) {
        out.h = static_cast<std::int64_t>(first[chi.order / p]);
        for (u64 j = 2; j < p; ++j) out.h = std::min(out.h, static_cast<std::int64_t>(first[j * chi.order / p]));
    }
    return out;
}

/// inv(m') * sum over Delta of Tr(chi(delta)) delta^{-1}.
GroupRingElt delta_idempotent(const RingAmbient& ambient, const PrimeToPData& data) {
    const auto& G = *ambient.group;
    const u64 q = ambient.modulus();
    const PadicTraces traces(data.mprime, ambient.p, ambient.n);
    const u64 inv = inverse_mod(data.mprime % q, q);
    GroupRingElt E(ambient);
    for (const auto& [delta, k] : data.delta) E.add_to(G.inv(delta), mul_mod(traces.trace(k), inv, q));
    return E;
}

}  // namespace

GroupRingElt build_T_chi(const RingAmbient& ambient, const Character& chi) {
    const auto& G = *ambient.group;
    const auto data = split_character(G, chi, ambient.p);
    GroupRingElt T = ring_multiply(kernel_sum(ambient, chi), delta_idempotent(ambient, data));
    if (data.h >= 0) T = ring_multiply(T, GroupRingElt::one(ambient) - GroupRingElt::basis(ambient, static_cast<Element>(data.h)));
    return T;
}

SpanOrderResult span_order(const std::vector<GroupRingElt>& generators, std::size_t group_cap) {
    SpanOrderResult out;
    if (generators.empty()) return out;
    const RingAmbient& amb = generators.front().ambient();
    if (amb.size() > group_cap)
        throw std::invalid_argument("group order " + std::to_string(amb.size()) + " exceeds the span cap " + std::to_string(group_cap));
    DenseMatrix<u64> A(amb.size(), generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) {
        if (!(generators[j].ambient() == amb)) throw std::invalid_argument("span_order: ambient mismatch");
        A.col(static_cast<Eigen::Index>(j)) = generators[j].coefficients();
    }
    out.divisor_valuations = elementary_divisor_valuations(A, amb.p, amb.n);
    for (unsigned e : out.divisor_valuations) out.valuation += amb.n - e;
    return out;
}

SpanOrderResult chi_span_order(const GroupRingElt& T_chi, const GroupRingElt& c) {
    const GroupRingElt x = ring_multiply(T_chi, c);
    std::vector<GroupRingElt> gens;
    gens.reserve(x.ambient().size());
    for (Element g = 0; g < x.ambient().size(); ++g) gens.push_back(x.act(g));
    return span_order(gens);
}

SpanOrderResult chi_span_order(const Character& chi, const GroupRingElt& c) {
    return chi_span_order(build_T_chi(c.ambient(), chi), c);
}

unsigned ima(const Character& chi, u64 p, unsigned n) { return n * static_cast<unsigned>(qp_degree(chi.order, p)); }

namespace {

/// Matrix of left multiplication by y on (Z/p^n)[G].
DenseMatrix<u64> multiplication_matrix(const GroupRingElt& y) {
    const std::size_t m = y.ambient().size();
    DenseMatrix<u64> M(m, m);
    for (Element g = 0; g < m; ++g) M.col(g) = ring_multiply(y, GroupRingElt::basis(y.ambient(), g)).coefficients();
    return M;
}

void append_rows(DenseMatrix<u64>& stack, const DenseMatrix<u64>& block) {
    const Eigen::Index old = stack.rows();
    stack.conservativeResize(old + block.rows(), block.cols());
    stack.bottomRows(block.rows()) = block;
}

}  // namespace

unsigned chi_part_order_oracle(const RingAmbient& ambient, const Character& chi) {
    const auto& G = *ambient.group;
    const std::size_t m = G.size();
    const GroupRingElt one = GroupRingElt::one(ambient);

    // Generators of Ker chi, added greedily until they span the kernel.
    std::vector<Element> kernel_gens;
    std::vector<bool> generated(m, false);
    generated[0] = true;
    for (Element g = 0; g < m; ++g) {
        if (!in_kernel(G, chi, g) || generated[g]) continue;
        kernel_gens.push_back(g);
        std::vector<Element> frontier;
        for (Element x = 0; x < m; ++x)
            if (generated[x]) frontier.push_back(x);
        while (!frontier.empty()) {
            std::vector<Element> next;
            for (Element x : frontier)
                for (Element k : kernel_gens) {
                    const Element y = G.mul(x, k);
                    if (!generated[y]) {
                        generated[y] = true;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
    }

    DenseMatrix<u64> conditions(0, static_cast<Eigen::Index>(m));
    for (Element k : kernel_gens) append_rows(conditions, multiplication_matrix(GroupRingElt::basis(ambient, k) - one));

    const auto data = split_character(G, chi, ambient.p);
    append_rows(conditions, multiplication_matrix(delta_idempotent(ambient, data) - one));

    if (data.h >= 0) {
        GroupRingElt norm(ambient);
        Element power = 0;
        for (u64 j = 0; j < ambient.p; ++j) {
            norm.add_to(power, 1);
            power = G.mul(power, static_cast<Element>(data.h));
        }
        append_rows(conditions, multiplication_matrix(norm));
    }
    return kernel_valuation(conditions, ambient.p, ambient.n);
}

}  // namespace chindex
