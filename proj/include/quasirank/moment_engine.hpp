// Generating-function constructions and operator identities: R(w;q) in both
// hypergeometric and Lambert form, C(w;q), moment series with the crank
// recurrence, the rank-crank PDE, Y_{2k} and the solved recurrence for the
// even rank moments, the P_k / V_k polynomial calculus, Durfee-symbol
// generating functions at root-of-unity points, and the twisted series.
#pragma once

#include "quasirank/cyclotomic.hpp"
#include "quasirank/qseries.hpp"
#include "quasirank/rank_lambert.hpp"
#include "quasirank/wqseries.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace quasirank::engine {

using quasirank::Int;
using quasirank::Rat;

using CycQ = CyclotomicRing<RationalRing>;
using SeriesQ = QSeries<RationalRing>;
using SeriesCycQ = QSeries<CycQ>;

struct DegeneratePointsError : std::domain_error {
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// bivariate generating functions

// bivariate inverse by row recurrence; rows[0] of x must be a unit scalar
template <class R>
WQSeries<R> wq_invert(const WQSeries<R>& x) {
    if (x.rows[0].is_zero() || x.rows[0].lo != 0 || x.rows[0].c.size() != 1)
        throw std::domain_error("wq_invert: constant row must be a scalar unit");
    auto u_inv = x.ring.invert_unit(x.rows[0].c[0]);
    WQSeries<R> y(x.ring, x.trunc);
    y.rows[0].lo = 0;
    y.rows[0].c = {u_inv};
    for (long long n = 1; n <= x.trunc; ++n) {
        LaurentPoly<R> acc;
        for (long long k = 1; k <= n; ++k) {
            if (x.rows[k].is_zero() || y.rows[n - k].is_zero()) continue;
            acc = laurent_add(x.ring, acc, laurent_mul(x.ring, x.rows[k], y.rows[n - k]));
        }
        y.rows[n] = laurent_scale(x.ring, acc, x.ring.neg(u_inv));
    }
    return y;
}

// R(w;q) = 1 + sum_{n>=1} q^{n^2} / ((wq;q)_n (w^{-1}q;q)_n)
template <class R>
WQSeries<R> rank_gf_hyper(const R& ring, long long T) {
    WQSeries<R> out = wq_one(ring, T);
    WQSeries<R> den = wq_one(ring, T);  // (wq;q)_n (w^{-1}q;q)_n, extended as n grows
    for (long long n = 1; n * n <= T; ++n) {
        // multiply den by (1 - w q^n)(1 - w^{-1} q^n)
        WQSeries<R> f(ring, T);
        f.rows[0].lo = 0;
        f.rows[0].c = {ring.one()};
        if (n <= T) {
            f.rows[n].lo = -1;
            f.rows[n].c = {ring.neg(ring.one()), ring.zero(), ring.neg(ring.one())};
        }
        if (2 * n <= T) {
            f.rows[2 * n].lo = 0;
            f.rows[2 * n].c = {ring.one()};
        }
        den = wq_mul(den, f);
        WQSeries<R> term = wq_invert(den);
        // shift by q^{n^2}
        WQSeries<R> shifted(ring, T);
        for (long long a = 0; a + n * n <= T; ++a) shifted.rows[a + n * n] = term.rows[a];
        out = wq_add(out, shifted);
    }
    return out;
}

// Lambert form: (1-w)/(q;q)_inf sum_{n in Z} (-1)^n q^{n(3n+1)/2} / (1 - w q^n).
// n = 0 contributes the exact constant 1 after the (1-w)/(1-w) cancellation;
// n > 0 expands as (1-w) sum_j w^j q^{nj}; n = -m re-expands in positive
// powers with w^{-j}.
template <class R>
WQSeries<R> rank_gf_lambert(const R& ring, long long T) {
    WQSeries<R> sum(ring, T);
    sum.rows[0].lo = 0;
    sum.rows[0].c = {ring.one()};
    auto one = ring.one();
    auto minus = ring.neg(one);
    for (long long n = 1;; ++n) {
        long long pent = n * (3 * n + 1) / 2;
        if (pent > T) break;
        bool pos = (n % 2 == 0);  // sign of (-1)^n
        for (long long j = 0; pent + n * j <= T; ++j) {
            auto& row = sum.rows[pent + n * j];
            // (1-w) w^j = w^j - w^{j+1}
            laurent_add_term(ring, row, j, pos ? one : minus);
            laurent_add_term(ring, row, j + 1, pos ? minus : one);
        }
    }
    for (long long m = 1;; ++m) {
        long long pent = m * (3 * m - 1) / 2;
        if (pent + m > T) break;
        bool pos = (m % 2 == 1);  // sign of -(-1)^{-m} = (-1)^{m+1}
        for (long long j = 1; pent + m * j <= T; ++j) {
            auto& row = sum.rows[pent + m * j];
            // -(1-w) w^{-j} = w^{1-j} - w^{-j}, folded with the term sign
            laurent_add_term(ring, row, -j, pos ? one : minus);
            laurent_add_term(ring, row, 1 - j, pos ? minus : one);
        }
    }
    return wq_mul_series(sum, partition_series(ring, T));
}

// C(w;q) = prod (1-q^n) / ((1-w q^n)(1-w^{-1} q^n))
template <class R>
WQSeries<R> crank_gf(const R& ring, long long T) {
    WQSeries<R> prod = wq_one(ring, T);
    for (long long n = 1; n <= T; ++n) {
        // 1/((1-w q^n)(1-w^{-1} q^n)): the q^{nt} row is sum_{j1+j2=t} w^{j1-j2},
        // i.e. exponents -t, -t+2, ..., t with coefficient 1
        WQSeries<R> g(ring, T);
        for (long long t = 0; n * t <= T; ++t) {
            g.rows[n * t].lo = -t;
            g.rows[n * t].c.assign(2 * t + 1, ring.zero());
            for (long long e = 0; e <= 2 * t; e += 2) g.rows[n * t].c[e] = ring.one();
        }
        prod = wq_mul(prod, g);
    }
    return wq_mul_series(prod, pentagonal_series(ring, T));
}

// evaluate the rows of an integer bivariate series at a point of another ring
template <class R2>
QSeries<R2> wq_eval_rows(const WQSeries<IntegerRing>& x, const R2& ring2,
                         const typename R2::Elem& w) {
    return wq_eval_w(x, ring2, w, [&](const Int& v) { return ring2.from_int(v); });
}

// [d/dw R(w;q)]_{w=x}, row-wise sum_m m N(m,n) x^{m-1}
template <class R2>
QSeries<R2> wq_eval_rows_dw(const WQSeries<IntegerRing>& x, const R2& ring2,
                            const typename R2::Elem& w) {
    WQSeries<IntegerRing> d(x.ring, x.trunc);
    for (long long n = 0; n <= x.trunc; ++n) {
        LaurentPoly<IntegerRing> row;
        for (std::size_t i = 0; i < x.rows[n].c.size(); ++i) {
            long long m = x.rows[n].lo + static_cast<long long>(i);
            if (m == 0) continue;
            laurent_add_term(x.ring, row, m - 1, x.rows[n].c[i] * Int(m));
        }
        laurent_normalize(x.ring, row);
        d.rows[n] = std::move(row);
    }
    return wq_eval_rows(d, ring2, w);
}

// ---------------------------------------------------------------------------
// bilateral Lambert-type sums at a root of unity (single and double pole)

// sum_{n in Z} (-1)^{n+1} q^{n(3n+1)/2} / (1 - zeta q^n)
template <class R>
QSeries<R> bilateral_single(const R& ring, const typename R::Elem& zeta, long long T) {
    QSeries<R> out(ring, T);
    out.val = 0;
    out.c.assign(T + 1, ring.zero());
    // n = 0: -1/(1-zeta)
    out.c[0] = ring.neg(ring.invert_unit(ring.sub(ring.one(), zeta)));
    auto zinv = ring.invert_unit(zeta);
    for (long long n = 1;; ++n) {  // q^{pent} sum_j zeta^j q^{nj}, sign (-1)^{n+1}
        long long pent = n * (3 * n + 1) / 2;
        if (pent > T) break;
        bool pos = (n % 2 == 1);
        auto zp = ring.one();
        for (long long j = 0; pent + n * j <= T; ++j) {
            out.c[pent + n * j] =
                pos ? ring.add(out.c[pent + n * j], zp) : ring.sub(out.c[pent + n * j], zp);
            zp = ring.mul(zp, zeta);
        }
    }
    for (long long m = 1;; ++m) {  // n = -m: (-1)^m sum_{j>=1} zeta^{-j} q^{pent+mj}
        long long pent = m * (3 * m - 1) / 2;
        if (pent + m > T) break;
        bool pos = (m % 2 == 0);
        auto zp = zinv;
        for (long long j = 1; pent + m * j <= T; ++j) {
            out.c[pent + m * j] =
                pos ? ring.add(out.c[pent + m * j], zp) : ring.sub(out.c[pent + m * j], zp);
            zp = ring.mul(zp, zinv);
        }
    }
    out.normalize();
    return out;
}

// sum_{n in Z} (-1)^{n+1} q^{3n(n+1)/2} / (1 - zeta q^n)^2; the double pole is
// expanded by exact differentiation of the geometric series, never by series
// division.
template <class R>
QSeries<R> bilateral_double(const R& ring, const typename R::Elem& zeta, long long T) {
    QSeries<R> out(ring, T);
    out.val = 0;
    out.c.assign(T + 1, ring.zero());
    auto one_minus = ring.sub(ring.one(), zeta);
    auto inv2 = ring.invert_unit(ring.mul(one_minus, one_minus));
    out.c[0] = ring.neg(inv2);  // n = 0
    auto zinv = ring.invert_unit(zeta);
    for (long long n = 1;; ++n) {  // 1/(1-zeta q^n)^2 = sum_j (j+1) zeta^j q^{nj}
        long long pent = 3 * n * (n + 1) / 2;
        if (pent > T) break;
        bool pos = (n % 2 == 1);
        auto zp = ring.one();
        for (long long j = 0; pent + n * j <= T; ++j) {
            auto v = ring.mul(zp, ring.from_long(j + 1));
            out.c[pent + n * j] =
                pos ? ring.add(out.c[pent + n * j], v) : ring.sub(out.c[pent + n * j], v);
            zp = ring.mul(zp, zeta);
        }
    }
    for (long long m = 1;; ++m) {
        // n = -m: 1/(1-zeta q^{-m})^2 = zeta^{-2} q^{2m} sum_j (j+1) zeta^{-j} q^{mj}
        long long pent = 3 * m * (m - 1) / 2;
        if (pent + 2 * m > T) break;
        bool pos = (m % 2 == 1);  // (-1)^{n+1} at n = -m
        auto zp = ring.mul(zinv, zinv);
        for (long long j = 0; pent + 2 * m + m * j <= T; ++j) {
            auto v = ring.mul(zp, ring.from_long(j + 1));
            auto& slot = out.c[pent + 2 * m + m * j];
            slot = pos ? ring.add(slot, v) : ring.sub(slot, v);
            zp = ring.mul(zp, zinv);
        }
    }
    out.normalize();
    return out;
}

// ---------------------------------------------------------------------------
// rational polynomials (P_k, V_k)

struct RatPoly {
    std::vector<Rat> c;  // c[i] = coefficient of x^i

    long degree() const {
        for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
            if (c[i] != 0) return i;
        return -1;
    }
    Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }
    bool operator==(const RatPoly& o) const {
        std::size_t n = std::max(c.size(), o.c.size());
        for (std::size_t i = 0; i < n; ++i)
            if (coeff(i) != o.coeff(i)) return false;
        return true;
    }
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const RatPoly& a, const Rat& s);
Rat poly_eval(const RatPoly& a, const Rat& x);

// P_k by the recurrence P_k = (1-12x) P_{k-1} - 36 x^2 P_{k-2}, P_0 = 0, P_1 = 1
RatPoly pk_poly(long k);
// P_k by the explicit binomial formula 2^{1-2k} sum_j C(2k,2j+1) (1-24x)^j
RatPoly pk_poly_explicit(long k);
// V_k(z) = P_k((1-z^2)/24)
RatPoly vk_poly(long k);
// P_{(l+1)/2}(x) = ((l+1)/2)(1 + (1-24x)^{(l-1)/2}) mod l, checked exactly over Z/l
bool pcong_check(long ell);

// ---------------------------------------------------------------------------
// moment engine over Q with memoized series

class MomentEngine {
public:
    explicit MomentEngine(long long T, bool checked = false);

    long long trunc() const { return T_; }
    const RationalRing& ring() const { return ring_; }

    const WQSeries<RationalRing>& rank_bivariate();
    const WQSeries<RationalRing>& crank_bivariate();

    SeriesQ partition_p();              // P(q), constant term 1
    SeriesQ partition_p_inv_sq();       // P^{-2}
    SeriesQ phi_series(long j);         // Phi_j, j odd

    SeriesQ rank_moment(long j);        // R_j(q) = sum_{n>=1} N_j(n) q^n
    SeriesQ crank_moment(long j);       // C_j(q); j = 0 returns P (normalization C_0 := P)
    SeriesQ crank_moment_recurrence(long a);  // C_a via the recurrence, a even >= 2
    SeriesQ symmetrized_series(long k); // R_{k+1}(q) = sum eta_{2k}(n) q^n

    SeriesQ y_series(long k);           // Y_{2k}
    SeriesQ rankcrank_lhs(long a);      // left side of the moment identity, a even >= 2
    SeriesQ rankcrank_rhs(long a);      // right side
    SeriesQ rankcrank_residual(long a) { return series_sub(rankcrank_lhs(a), rankcrank_rhs(a)); }
    SeriesQ solve_r2k(long k);          // R_{2k} from the solved recurrence, k >= 1

    // P_k(delta_q) applied to R_2
    SeriesQ pk_applied_to_r2(long k);

private:
    long long T_;
    bool checked_;
    RationalRing ring_;
    std::optional<WQSeries<RationalRing>> rank_bi_, crank_bi_;
    std::map<long, SeriesQ> rank_mom_, crank_mom_, sym_, y_, solved_;
    std::map<long, SeriesQ> phi_;
    std::optional<SeriesQ> p_, p_inv_sq_;
};

// rank-crank PDE residual:
// w (q;q)^2 C(w;q)^3 - (3(1-w)^2 d_q + (1/2)(1-w)^2 d_w^2 - (1/2)(w^2-1) d_w + w) R(w;q)
WQSeries<RationalRing> pde_residual(long long T);

// ---------------------------------------------------------------------------
// Durfee generating functions at points (over Q(zeta))

// R_k(x_1..x_k; q) = sum_i R(x_i;q) / prod_{j != i} (x_i - x_j)(1 - 1/(x_i x_j));
// requires x_i pairwise distinct and x_i x_j != 1 (including i = j).
SeriesCycQ durfee_gf_eval(const CycQ& ring, const WQSeries<IntegerRing>& rank_bi,
                          const std::vector<CycQ::Elem>& points);

// the k = 2 equal-arguments case: [d/dw R(w;q)]_{w=x} / (1 - x^{-2}), x^2 != 1
SeriesCycQ durfee_gf_deriv(const CycQ& ring, const WQSeries<IntegerRing>& rank_bi,
                           const CycQ::Elem& x);

// ---------------------------------------------------------------------------
// twisted series (over Q(zeta_{2c}) or Q(zeta_c))

struct TwistedR2 {
    CycQ ring;                 // conductor 2c
    SeriesCycQ value;          // R_2(a/c; q)
    SeriesCycQ sum_single;     // P * (single-pole bilateral sum)
    SeriesCycQ sum_double;     // P * (double-pole bilateral sum)
    TwistedR2(CycQ r, SeriesCycQ v, SeriesCycQ s1, SeriesCycQ s2)
        : ring(std::move(r)), value(std::move(v)), sum_single(std::move(s1)),
          sum_double(std::move(s2)) {}
};
TwistedR2 twisted_r2(long a, long c, long long T);

// non-constant part of the (0,a) Eisenstein series of weight j+1:
// sum_{n>=1} ( sum_{d|n} d^j (zeta_c^{ad} - (-1)^j zeta_c^{-ad}) ) q^n
SeriesCycQ twisted_eisenstein(long j, long a, long c, long long T);
// the same series from the double sum [delta_w^j L(w;q)]_{w=zeta}
SeriesCycQ twisted_eisenstein_by_lsum(long j, long a, long c, long long T);

// R_{j,a,c}(q) or C_{j,a,c}(q) from the bivariate rows
SeriesCycQ twisted_moment_series(char kind, long j, long a, long c,
                                 const WQSeries<IntegerRing>& bi);

// s(a,c) from the quarter intervals of a/c; a/c in {0, 1/6, 1/2, 5/6} rejected
int quarter_interval_s(long a, long c);

// T_2(a/c;q) in the integer-exponent form with exponent scale lcm(2c, 24)
struct T2Series {
    long long exponent_scale;
    QSeries<RationalRing> series;
};
T2Series t2_series(long a, long c, long long T);

}  // namespace quasirank::engine
