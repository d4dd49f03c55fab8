#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "chindex/modarith.hpp"

namespace chindex {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Valuations v_i of the elementary divisors of a matrix over the local ring
/// Z/p^n, in pivot order; entries that vanish modulo p^n are reported as n.
/// The result has min(rows, cols) entries.
///
/// Z/p^n is a local principal ideal ring, so a pivot of minimal valuation
/// divides every other entry of the remaining block and plain elimination
/// reaches Smith form without coefficient growth.
template <typename Scalar>
std::vector<unsigned> elementary_divisor_valuations(DenseMatrix<Scalar> A, u64 p, unsigned n) {
    const u64 q = ipow(p, n);
    const Eigen::Index rows = A.rows();
    const Eigen::Index cols = A.cols();
    const Eigen::Index diag = std::min(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = static_cast<Scalar>(static_cast<u64>(A(i, j)) % q);

    std::vector<unsigned> vals;
    vals.reserve(diag);
    for (Eigen::Index k = 0; k < diag; ++k) {
        unsigned best = n;
        Eigen::Index bi = -1, bj = -1;
        for (Eigen::Index i = k; i < rows && best > 0; ++i) {
            for (Eigen::Index j = k; j < cols; ++j) {
                const unsigned v = valuation(static_cast<u64>(A(i, j)), p, n);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        }
        if (bi < 0) break;
        A.row(k).swap(A.row(bi));
        A.col(k).swap(A.col(bj));
        const u64 pv = ipow(p, best);
        const u64 unit_inv = inverse_mod(static_cast<u64>(A(k, k)) / pv % q, q);
        for (Eigen::Index i = k + 1; i < rows; ++i) {
            const u64 entry = static_cast<u64>(A(i, k));
            if (entry == 0) continue;
            const u64 factor = mul_mod(entry / pv, unit_inv, q);
            for (Eigen::Index j = k; j < cols; ++j)
                A(i, j) = static_cast<Scalar>(sub_mod(static_cast<u64>(A(i, j)), mul_mod(factor, static_cast<u64>(A(k, j)), q), q));
        }
        // Column operations only touch row k once column k is cleared.
        for (Eigen::Index j = k + 1; j < cols; ++j) A(k, j) = 0;
        vals.push_back(best);
    }
    vals.resize(diag, n);
    return vals;
}

/// log_p of the order of the Z/p^n-span of the columns of A.
template <typename Scalar>
unsigned column_span_valuation(const DenseMatrix<Scalar>& A, u64 p, unsigned n) {
    unsigned v = 0;
    for (unsigned e : elementary_divisor_valuations(A, p, n)) v += n - e;
    return v;
}

/// log_p of the order of {x in (Z/p^n)^cols : A x = 0}.
template <typename Scalar>
unsigned kernel_valuation(const DenseMatrix<Scalar>& A, u64 p, unsigned n) {
    auto vals = elementary_divisor_valuations(A, p, n);
    vals.resize(static_cast<std::size_t>(A.cols()), n);
    unsigned v = 0;
    for (unsigned e : vals) v += e;
    return v;
}

}  // namespace chindex
