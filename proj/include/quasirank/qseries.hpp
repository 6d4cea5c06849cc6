// Truncated Laurent q-series over an exact coefficient ring.
//
// A series stores coefficients for exponents val .. val+len-1 and a
// truncation bound `trunc`: every exponent <= trunc is exactly known
// (zero if not stored), exponents beyond trunc are unknown. Arithmetic
// propagates trunc pessimistically so every stored coefficient of a result
// is exact; this is what keeps the mixed valuations (q^{-1} prefactors) and
// rescalings (q -> q^24) used throughout honest.
#pragma once

#include "quasirank/ints.hpp"
#include "quasirank/rings.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace quasirank {

inline constexpr long long kInfTrunc = std::numeric_limits<long long>::max() / 4;

inline long long sat_add(long long a, long long b) {
    if (a >= kInfTrunc || b >= kInfTrunc) return kInfTrunc;
    long long s = a + b;
    return s >= kInfTrunc ? kInfTrunc : s;
}

template <class R>
struct QSeries {
    using Elem = typename R::Elem;

    R ring{};
    long long val = 0;          // exponent of c[0]
    long long trunc = kInfTrunc;  // all exponents <= trunc are exact
    std::vector<Elem> c;

    QSeries() = default;
    explicit QSeries(R r, long long truncation = kInfTrunc)
        : ring(std::move(r)), trunc(truncation) {}

    bool is_zero() const { return c.empty(); }

    // exact coefficient of q^e; e must lie within the validity range
    Elem coeff(long long e) const {
        if (e > trunc) throw std::logic_error("QSeries::coeff beyond truncation");
        if (e < val || e >= val + static_cast<long long>(c.size())) return ring.zero();
        return c[e - val];
    }

    void normalize() {
        // drop coefficients beyond trunc, then strip zero fringes
        if (trunc < kInfTrunc && val + static_cast<long long>(c.size()) - 1 > trunc) {
            long long keep = trunc - val + 1;
            c.resize(keep > 0 ? keep : 0);
        }
        std::size_t lead = 0;
        while (lead < c.size() && ring.is_zero(c[lead])) ++lead;
        if (lead == c.size()) {
            c.clear();
            val = 0;
            return;
        }
        if (lead > 0) {
            c.erase(c.begin(), c.begin() + lead);
            val += static_cast<long long>(lead);
        }
        while (!c.empty() && ring.is_zero(c.back())) c.pop_back();
    }
};

template <class R>
QSeries<R> series_zero(const R& ring, long long trunc = kInfTrunc) {
    return QSeries<R>(ring, trunc);
}

template <class R>
QSeries<R> series_const(const R& ring, typename R::Elem v, long long trunc = kInfTrunc) {
    QSeries<R> s(ring, trunc);
    s.c.push_back(std::move(v));
    s.normalize();
    return s;
}

template <class R>
QSeries<R> series_one(const R& ring, long long trunc = kInfTrunc) {
    return series_const(ring, ring.one(), trunc);
}

// monomial c * q^e
template <class R>
QSeries<R> series_monomial(const R& ring, typename R::Elem v, long long e,
                           long long trunc = kInfTrunc) {
    QSeries<R> s(ring, trunc);
    s.val = e;
    s.c.push_back(std::move(v));
    s.normalize();
    return s;
}

template <class R>
QSeries<R> series_add(const QSeries<R>& x, const QSeries<R>& y) {
    if (!(x.ring == y.ring)) throw std::invalid_argument("series_add: ring mismatch");
    QSeries<R> r(x.ring, std::min(x.trunc, y.trunc));
    if (x.is_zero() && y.is_zero()) return r;
    long long lo = std::min(x.is_zero() ? y.val : x.val, y.is_zero() ? x.val : y.val);
    long long hi_x = x.val + static_cast<long long>(x.c.size()) - 1;
    long long hi_y = y.val + static_cast<long long>(y.c.size()) - 1;
    long long hi = std::min(std::max(x.is_zero() ? hi_y : hi_x, y.is_zero() ? hi_x : hi_y),
                            r.trunc);
    if (hi < lo) return r;
    r.val = lo;
    r.c.assign(hi - lo + 1, x.ring.zero());
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        long long e = x.val + static_cast<long long>(i);
        if (e > hi) break;
        r.c[e - lo] = x.c[i];
    }
    for (std::size_t i = 0; i < y.c.size(); ++i) {
        long long e = y.val + static_cast<long long>(i);
        if (e > hi) break;
        r.c[e - lo] = x.ring.add(r.c[e - lo], y.c[i]);
    }
    r.normalize();
    return r;
}

template <class R>
QSeries<R> series_neg(const QSeries<R>& x) {
    QSeries<R> r = x;
    for (auto& v : r.c) v = x.ring.neg(v);
    return r;
}

template <class R>
QSeries<R> series_sub(const QSeries<R>& x, const QSeries<R>& y) {
    return series_add(x, series_neg(y));
}

template <class R>
QSeries<R> series_scale(const QSeries<R>& x, const typename R::Elem& s) {
    QSeries<R> r = x;
    for (auto& v : r.c) v = x.ring.mul(v, s);
    r.normalize();
    return r;
}

template <class R>
QSeries<R> series_shift(const QSeries<R>& x, long long k) {
    QSeries<R> r = x;
    r.val += k;
    r.trunc = sat_add(x.trunc, k);
    return r;
}

// Result trunc: coefficient at e is exact iff e <= min(xT + yv, yT + xv).
template <class R>
QSeries<R> series_mul(const QSeries<R>& x, const QSeries<R>& y, long long cap = kInfTrunc) {
    if (!(x.ring == y.ring)) throw std::invalid_argument("series_mul: ring mismatch");
    // an exact zero annihilates everything
    if ((x.is_zero() && x.trunc >= kInfTrunc) || (y.is_zero() && y.trunc >= kInfTrunc))
        return series_zero(x.ring);
    // a zero-so-far series has valuation at least trunc+1
    long long xv = x.is_zero() ? x.trunc + 1 : x.val;
    long long yv = y.is_zero() ? y.trunc + 1 : y.val;
    long long t = std::min(cap, std::min(sat_add(x.trunc, yv), sat_add(y.trunc, xv)));
    QSeries<R> r(x.ring, t);
    if (x.is_zero() || y.is_zero()) return r;
    long long lo = x.val + y.val;
    if (lo > t) return r;
    long long hi = std::min(t, x.val + static_cast<long long>(x.c.size()) - 1 + y.val +
                                   static_cast<long long>(y.c.size()) - 1);
    if (hi < lo) return r;
    r.val = lo;
    r.c.assign(hi - lo + 1, x.ring.zero());
    // iterate the operand with fewer nonzero coefficients on the outside
    auto nonzeros = [](const QSeries<R>& s) {
        std::size_t n = 0;
        for (const auto& v : s.c)
            if (!s.ring.is_zero(v)) ++n;
        return n;
    };
    bool x_outer = nonzeros(x) <= nonzeros(y);
    const QSeries<R>& a = x_outer ? x : y;
    const QSeries<R>& b = x_outer ? y : x;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.ring.is_zero(a.c[i])) continue;
        long long ea = a.val + static_cast<long long>(i);
        long long jmax = std::min<long long>(static_cast<long long>(b.c.size()) - 1,
                                             hi - ea - b.val);
        for (long long j = 0; j <= jmax; ++j) {
            if (b.ring.is_zero(b.c[j])) continue;
            r.c[ea + b.val + j - lo] = r.ring.add(r.c[ea + b.val + j - lo],
                                                  r.ring.mul(a.c[i], b.c[j]));
        }
    }
    r.normalize();
    return r;
}

// Inverse of a series whose lowest coefficient is a unit. The result is
// valid through min(want, xT - 2*val(x)).
template <class R>
QSeries<R> series_invert(const QSeries<R>& x, long long want = kInfTrunc) {
    if (x.is_zero()) throw std::domain_error("series_invert: zero series");
    long long vx = x.val;
    typename R::Elem lead_inv = x.ring.invert_unit(x.c[0]);
    long long depth_limit = (x.trunc >= kInfTrunc) ? kInfTrunc : x.trunc - vx;
    long long want_depth = (want >= kInfTrunc) ? kInfTrunc : want + vx;  // offsets k <= want + vx
    long long depth = std::min(depth_limit, want_depth);
    if (depth >= kInfTrunc)
        throw std::invalid_argument("series_invert: unbounded inversion needs explicit trunc");
    QSeries<R> r(x.ring, depth - vx);
    if (depth < 0) return r;
    r.val = -vx;
    r.c.assign(depth + 1, x.ring.zero());
    r.c[0] = lead_inv;
    // nonzero offsets of x, for sparse inputs
    std::vector<long long> nz;
    for (std::size_t i = 1; i < x.c.size(); ++i)
        if (!x.ring.is_zero(x.c[i])) nz.push_back(static_cast<long long>(i));
    for (long long k = 1; k <= depth; ++k) {
        typename R::Elem acc = x.ring.zero();
        for (long long i : nz) {
            if (i > k) break;
            acc = x.ring.add(acc, x.ring.mul(x.c[i], r.c[k - i]));
        }
        r.c[k] = x.ring.neg(x.ring.mul(lead_inv, acc));
    }
    r.normalize();
    return r;
}

template <class R>
QSeries<R> series_pow(const QSeries<R>& x, long long e, long long cap = kInfTrunc) {
    if (e < 0) return series_pow(series_invert(x, cap), -e, cap);
    QSeries<R> r = series_one(x.ring, cap);
    QSeries<R> b = x;
    while (e) {
        if (e & 1) r = series_mul(r, b, cap);
        if (e >>= 1) b = series_mul(b, b, cap);
    }
    return r;
}

// delta_q = q d/dq: multiplies the coefficient of q^n by n.
template <class R>
QSeries<R> delta_q(const QSeries<R>& x) {
    QSeries<R> r = x;
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = r.ring.mul(r.c[i], r.ring.from_long(r.val + static_cast<long long>(i)));
    r.normalize();
    return r;
}

// apply a polynomial in delta_q
template <class R>
QSeries<R> apply_delta_poly(const std::vector<typename R::Elem>& poly, const QSeries<R>& x) {
    QSeries<R> acc = series_zero(x.ring, x.trunc);
    QSeries<R> cur = x;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        acc = series_add(acc, series_scale(cur, poly[i]));
        if (i + 1 < poly.size()) cur = delta_q(cur);
    }
    return acc;
}

// substitute q -> q^k (z -> kz); gaps between multiples are known zero
template <class R>
QSeries<R> rescale(const QSeries<R>& x, long long k) {
    if (k <= 0) throw std::domain_error("rescale: k must be positive");
    QSeries<R> r(x.ring, x.trunc >= kInfTrunc ? kInfTrunc : x.trunc * k + k - 1);
    if (x.is_zero()) return r;
    r.val = x.val * k;
    r.c.assign((x.c.size() - 1) * k + 1, x.ring.zero());
    for (std::size_t i = 0; i < x.c.size(); ++i) r.c[i * k] = x.c[i];
    r.normalize();
    return r;
}

// output coefficient at n = input coefficient at A*n + B
template <class R>
QSeries<R> extract_progression(const QSeries<R>& x, long long A, long long B) {
    if (A <= 0) throw std::domain_error("extract_progression: A must be positive");
    QSeries<R> r(x.ring, x.trunc >= kInfTrunc ? kInfTrunc : floor_div(x.trunc - B, A));
    if (x.is_zero()) return r;
    long long hi_in = x.val + static_cast<long long>(x.c.size()) - 1;
    long long n0 = floor_div(x.val - B + A - 1, A);  // ceil((val-B)/A)
    long long n1 = std::min(floor_div(hi_in - B, A), r.trunc);
    if (n1 < n0) return r;
    r.val = n0;
    r.c.assign(n1 - n0 + 1, x.ring.zero());
    for (long long n = n0; n <= n1; ++n) r.c[n - n0] = x.c[A * n + B - x.val];
    r.normalize();
    return r;
}

// U(l): a(n) -> a(l n)
template <class R>
QSeries<R> u_operator(const QSeries<R>& x, long long ell) {
    return extract_progression(x, ell, 0);
}

// T(l) on a level-1 form of even weight k: a(n) -> a(l n) + l^{k-1} a(n/l)
template <class R>
QSeries<R> t_operator(const QSeries<R>& x, long long ell, long long weight) {
    if (!x.is_zero() && x.val < 0)
        throw std::domain_error("t_operator: negative valuation");
    QSeries<R> u = u_operator(x, ell);
    QSeries<R> v = rescale(x, ell);
    v.trunc = std::min(v.trunc, u.trunc);  // combined validity is limited by the U part
    auto scale = x.ring.from_int(int_pow(Int(ell), static_cast<unsigned long>(weight - 1)));
    return series_add(u, series_scale(v, scale));
}

// U*_{eps,l}: keeps a(n) exactly when the Legendre symbol ((1-24n)/l) = eps.
template <class R>
QSeries<R> u_star(const QSeries<R>& x, int eps, long long ell) {
    if (ell <= 3 || !is_prime(ell)) throw std::domain_error("u_star: l must be a prime > 3");
    if (eps < -1 || eps > 1) throw std::domain_error("u_star: eps in {-1,0,1}");
    QSeries<R> r = x;
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        long long n = r.val + static_cast<long long>(i);
        if (legendre_symbol(1 - 24 * n, ell) != eps) r.c[i] = r.ring.zero();
    }
    r.normalize();
    return r;
}

// the q^{24n-1} view of a series indexed by the statistic index n
template <class R>
QSeries<R> eta_aligned_view(const QSeries<R>& x) {
    return series_shift(rescale(x, 24), -1);
}

// equality of all coefficients through min(trunc, cap)
template <class R>
bool series_equal(const QSeries<R>& x, const QSeries<R>& y, long long cap = kInfTrunc) {
    long long t = std::min(cap, std::min(x.trunc, y.trunc));
    if (t >= kInfTrunc) {
        // both are exact polynomials
        if (x.val != y.val && !(x.is_zero() || y.is_zero())) return false;
        long long lo = std::min(x.is_zero() ? 0 : x.val, y.is_zero() ? 0 : y.val);
        long long hi = std::max(x.val + static_cast<long long>(x.c.size()),
                                y.val + static_cast<long long>(y.c.size()));
        for (long long e = lo; e < hi; ++e)
            if (!x.ring.equal(x.coeff(e), y.coeff(e))) return false;
        return true;
    }
    long long lo = std::min(x.is_zero() ? t : x.val, y.is_zero() ? t : y.val);
    for (long long e = lo; e <= t; ++e)
        if (!x.ring.equal(x.coeff(e), y.coeff(e))) return false;
    return true;
}

template <class R>
bool series_is_zero_through(const QSeries<R>& x, long long cap) {
    if (x.trunc < cap) throw std::logic_error("series_is_zero_through: insufficient truncation");
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        long long e = x.val + static_cast<long long>(i);
        if (e > cap) break;
        if (!x.ring.is_zero(x.c[i])) return false;
    }
    return true;
}

// map coefficients into another ring through a ring homomorphism
template <class R1, class R2, class F>
QSeries<R2> series_map(const QSeries<R1>& x, const R2& ring2, F&& f) {
    QSeries<R2> r(ring2, x.trunc);
    r.val = x.val;
    r.c.reserve(x.c.size());
    for (const auto& v : x.c) r.c.push_back(f(v));
    r.normalize();
    return r;
}

// ---------------------------------------------------------------------------
// classical building blocks

// (q;q)_infty = sum_{k in Z} (-1)^k q^{k(3k+1)/2}, truncated at T
template <class R>
QSeries<R> pentagonal_series(const R& ring, long long T) {
    QSeries<R> s(ring, T);
    s.val = 0;
    s.c.assign(T + 1, ring.zero());
    for (long long k = 0;; ++k) {
        long long e1 = k * (3 * k + 1) / 2;   // k >= 0
        long long e2 = k * (3 * k - 1) / 2;   // -k
        if (e2 > T && e1 > T) break;
        auto sgn = (k % 2 == 0) ? ring.one() : ring.neg(ring.one());
        if (e1 <= T) s.c[e1] = ring.add(s.c[e1], sgn);
        if (k > 0 && e2 <= T) s.c[e2] = ring.add(s.c[e2], sgn);
    }
    s.normalize();
    return s;
}

// (q^{a_exp}; q)_n, with n = -1 meaning the infinite product
template <class R>
QSeries<R> pochhammer(const R& ring, long long a_exp, long long n, long long T) {
    if (n < 0 && a_exp <= 0)
        throw std::domain_error("pochhammer: infinite product needs a_exp >= 1");
    QSeries<R> r = series_one(ring, n < 0 ? T : kInfTrunc);
    for (long long j = 0;; ++j) {
        if (n >= 0 && j >= n) break;
        long long e = a_exp + j;
        if (n < 0 && e > T) break;
        QSeries<R> f = series_one(ring, n < 0 ? T : kInfTrunc);
        f = series_add(f, series_monomial(ring, ring.neg(ring.one()), e));
        r = series_mul(r, f, n < 0 ? T : kInfTrunc);
    }
    return r;
}

// P(q) = sum p(n) q^n = 1/(q;q)_infty
template <class R>
QSeries<R> partition_series(const R& ring, long long T) {
    return series_invert(pentagonal_series(ring, T), T);
}

// eta(scale*z)^r as a q-series with valuation r*scale/24 (must be integral)
template <class R>
QSeries<R> eta_power(const R& ring, long long r, long long scale, long long T) {
    if ((r * scale) % 24 != 0)
        throw std::domain_error("eta_power: fractional valuation (need 24 | r*scale)");
    long long v = r * scale / 24;
    long long prod_T = T - v;  // product part is needed through q^{T-v}
    if (prod_T < 0) prod_T = 0;
    QSeries<R> pent = rescale(pentagonal_series(ring, prod_T / scale), scale);
    pent.trunc = prod_T;  // rescale's gap bonus, clamped to what we need
    QSeries<R> prod;
    if (r >= 0) {
        prod = series_one(ring, prod_T);
        for (long long i = 0; i < r; ++i) prod = series_mul(prod, pent, prod_T);
    } else {
        QSeries<R> pos = series_one(ring, prod_T);
        for (long long i = 0; i < -r; ++i) pos = series_mul(pos, pent, prod_T);
        prod = series_invert(pos, prod_T);
    }
    QSeries<R> out = series_shift(prod, v);
    out.trunc = std::min(out.trunc, T);
    return out;
}

// Phi_j(z) = sum_{n>=1} sigma_j(n) q^n, j odd
template <class R>
QSeries<R> eisenstein_phi(const R& ring, long j, long long T) {
    if (j < 1 || j % 2 == 0) throw std::domain_error("eisenstein_phi: j must be odd >= 1");
    QSeries<R> s(ring, T);
    s.val = 0;
    s.c.assign(T + 1, ring.zero());
    for (long long d = 1; d <= T; ++d) {
        auto dj = ring.from_int(int_pow(Int(d), static_cast<unsigned long>(j)));
        for (long long m = d; m <= T; m += d) s.c[m] = ring.add(s.c[m], dj);
    }
    s.normalize();
    return s;
}

// E_j = 1 - (2j/B_j) Phi_{j-1}, j even >= 2
template <class R>
QSeries<R> eisenstein_e(const R& ring, long j, long long T);

}  // namespace quasirank

#include "quasirank/bernoulli.hpp"

namespace quasirank {

template <class R>
QSeries<R> eisenstein_e(const R& ring, long j, long long T) {
    if (j < 2 || j % 2 != 0) throw std::domain_error("eisenstein_e: j must be even >= 2");
    Rat coeff = Rat(-2 * j) / bernoulli(j);
    auto c = ring.from_rat(coeff);
    if (!c) throw std::domain_error("eisenstein_e: coefficient not representable in ring");
    return series_add(series_one(ring, T), series_scale(eisenstein_phi(ring, j - 1, T), *c));
}

}  // namespace quasirank
