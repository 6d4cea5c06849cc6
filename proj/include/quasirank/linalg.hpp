// Exact linear solving for the series-fitting steps. Elimination works over
// any ring whose nonzero elements are units (Q, Z/p); Z/p^2 systems are
// solved by lifting a mod-p solution.
#pragma once

#include "quasirank/rings.hpp"

#include <optional>
#include <vector>

namespace quasirank {

template <class R>
struct LinearSolution {
    bool consistent = false;
    bool unique = false;  // no free columns among the solved ones
    std::vector<typename R::Elem> x;
};

// Row-reduce A x = b (rows may exceed columns). Returns a particular solution
// with free variables set to zero. Pivots must be units; rings where a
// nonzero non-unit can appear (Z/p^k) need solve_mod_prime_power instead.
template <class R>
LinearSolution<R> solve_linear(const R& ring, std::vector<std::vector<typename R::Elem>> A,
                               std::vector<typename R::Elem> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    LinearSolution<R> out;
    out.x.assign(cols, ring.zero());
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (!ring.is_zero(A[r][col])) {
                if (!ring.try_invert(A[r][col]))
                    throw std::domain_error("solve_linear: non-unit pivot candidate");
                sel = r;
                break;
            }
        }
        if (sel == rows) continue;  // free column
        std::swap(A[rank], A[sel]);
        std::swap(b[rank], b[sel]);
        auto inv = ring.invert_unit(A[rank][col]);
        for (std::size_t c = col; c < cols; ++c) A[rank][c] = ring.mul(A[rank][c], inv);
        b[rank] = ring.mul(b[rank], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || ring.is_zero(A[r][col])) continue;
            auto f = A[r][col];
            for (std::size_t c = col; c < cols; ++c)
                A[r][c] = ring.sub(A[r][c], ring.mul(f, A[rank][c]));
            b[r] = ring.sub(b[r], ring.mul(f, b[rank]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (!ring.is_zero(b[r])) return out;  // inconsistent
    out.consistent = true;
    out.unique = (rank == cols);
    for (std::size_t r = 0; r < rank; ++r) out.x[pivot_col[r]] = b[r];
    return out;
}

// Solve A x = b over Z/l^2 (entries in a ResidueRing of modulus l^2) by
// solving mod l and lifting: x = x0 + l x1 with A x1 = (b - A x0)/l (mod l).
inline LinearSolution<ResidueRing> solve_mod_prime_square(const ResidueRing& ring, long ell,
                                                          const std::vector<std::vector<ResidueRing::Elem>>& A,
                                                          const std::vector<ResidueRing::Elem>& b) {
    if (ring.modulus() != static_cast<std::uint64_t>(ell) * ell)
        throw std::domain_error("solve_mod_prime_square: modulus must be l^2");
    ResidueRing zl(static_cast<std::uint64_t>(ell));
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    auto reduce_mat = [&](const std::vector<std::vector<ResidueRing::Elem>>& M) {
        std::vector<std::vector<ResidueRing::Elem>> m(M.size());
        for (std::size_t r = 0; r < M.size(); ++r) {
            m[r].resize(M[r].size());
            for (std::size_t c = 0; c < M[r].size(); ++c) m[r][c] = M[r][c] % ell;
        }
        return m;
    };
    std::vector<ResidueRing::Elem> b0(rows);
    for (std::size_t r = 0; r < rows; ++r) b0[r] = b[r] % ell;
    auto base = solve_linear(zl, reduce_mat(A), b0);
    LinearSolution<ResidueRing> out;
    out.x.assign(cols, 0);
    if (!base.consistent) return out;
    // residual (b - A x0) must be divisible by l
    std::vector<ResidueRing::Elem> resid(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        ResidueRing::Elem acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc = ring.add(acc, ring.mul(A[r][c], base.x[c]));
        auto d = ring.sub(b[r], acc);
        if (d % ell != 0) return out;  // a different x0 in the affine set might work,
                                       // but with full column rank mod l there is none
        resid[r] = (d / ell) % ell;
    }
    auto lift = solve_linear(zl, reduce_mat(A), resid);
    if (!lift.consistent) return out;
    out.consistent = true;
    out.unique = base.unique && lift.unique;
    for (std::size_t c = 0; c < cols; ++c)
        out.x[c] = ring.add(base.x[c], ring.mul(static_cast<ResidueRing::Elem>(ell), lift.x[c]));
    // final verification against the full system
    for (std::size_t r = 0; r < rows; ++r) {
        ResidueRing::Elem acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc = ring.add(acc, ring.mul(A[r][c], out.x[c]));
        if (!ring.equal(acc, b[r])) {
            out.consistent = false;
            return out;
        }
    }
    return out;
}

}  // namespace quasirank
