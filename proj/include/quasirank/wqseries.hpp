// Bivariate truncated series: each q-power n in 0..trunc carries a finite
// Laurent polynomial in the auxiliary variable w. This is the exact home of
// the rank and crank generating functions R(w;q), C(w;q) and of the
// rank-crank PDE; for those rows the support satisfies |m| <= n.
#pragma once

#include "quasirank/qseries.hpp"

#include <vector>

namespace quasirank {

template <class R>
struct LaurentPoly {
    using Elem = typename R::Elem;
    long long lo = 0;      // exponent of c[0]
    std::vector<Elem> c;   // coefficient of w^{lo+i}

    bool is_zero() const { return c.empty(); }
    long long hi() const { return lo + static_cast<long long>(c.size()) - 1; }
};

template <class R>
void laurent_normalize(const R& ring, LaurentPoly<R>& p) {
    std::size_t lead = 0;
    while (lead < p.c.size() && ring.is_zero(p.c[lead])) ++lead;
    if (lead == p.c.size()) {
        p.c.clear();
        p.lo = 0;
        return;
    }
    if (lead) {
        p.c.erase(p.c.begin(), p.c.begin() + lead);
        p.lo += static_cast<long long>(lead);
    }
    while (!p.c.empty() && ring.is_zero(p.c.back())) p.c.pop_back();
}

template <class R>
typename R::Elem laurent_coeff(const R& ring, const LaurentPoly<R>& p, long long m) {
    if (m < p.lo || m > p.hi()) return ring.zero();
    return p.c[m - p.lo];
}

template <class R>
void laurent_add_term(const R& ring, LaurentPoly<R>& p, long long m,
                      const typename R::Elem& v) {
    if (ring.is_zero(v)) return;
    if (p.c.empty()) {
        p.lo = m;
        p.c.push_back(v);
        return;
    }
    if (m < p.lo) {
        p.c.insert(p.c.begin(), p.lo - m, ring.zero());
        p.lo = m;
    } else if (m > p.hi()) {
        p.c.resize(m - p.lo + 1, ring.zero());
    }
    p.c[m - p.lo] = ring.add(p.c[m - p.lo], v);
}

template <class R>
LaurentPoly<R> laurent_add(const R& ring, const LaurentPoly<R>& a, const LaurentPoly<R>& b) {
    LaurentPoly<R> r = a;
    for (std::size_t i = 0; i < b.c.size(); ++i)
        laurent_add_term(ring, r, b.lo + static_cast<long long>(i), b.c[i]);
    laurent_normalize(ring, r);
    return r;
}

template <class R>
LaurentPoly<R> laurent_mul(const R& ring, const LaurentPoly<R>& a, const LaurentPoly<R>& b) {
    LaurentPoly<R> r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, ring.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (ring.is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (ring.is_zero(b.c[j])) continue;
            r.c[i + j] = ring.add(r.c[i + j], ring.mul(a.c[i], b.c[j]));
        }
    }
    laurent_normalize(ring, r);
    return r;
}

template <class R>
LaurentPoly<R> laurent_scale(const R& ring, const LaurentPoly<R>& a,
                             const typename R::Elem& s) {
    LaurentPoly<R> r = a;
    for (auto& v : r.c) v = ring.mul(v, s);
    laurent_normalize(ring, r);
    return r;
}

template <class R>
struct WQSeries {
    using Elem = typename R::Elem;

    R ring;
    long long trunc = 0;
    std::vector<LaurentPoly<R>> rows;  // rows[n] for n = 0..trunc

    WQSeries(R r, long long t) : ring(std::move(r)), trunc(t) {
        if (t < 0) throw std::domain_error("WQSeries: truncation must be >= 0");
        rows.resize(t + 1);
    }

    Elem coeff(long long m, long long n) const {
        if (n < 0 || n > trunc) throw std::logic_error("WQSeries::coeff beyond truncation");
        return laurent_coeff(ring, rows[n], m);
    }
};

template <class R>
WQSeries<R> wq_zero(const R& ring, long long t) { return WQSeries<R>(ring, t); }

template <class R>
WQSeries<R> wq_one(const R& ring, long long t) {
    WQSeries<R> r(ring, t);
    r.rows[0].lo = 0;
    r.rows[0].c = {ring.one()};
    return r;
}

template <class R>
WQSeries<R> wq_add(const WQSeries<R>& x, const WQSeries<R>& y) {
    long long t = std::min(x.trunc, y.trunc);
    WQSeries<R> r(x.ring, t);
    for (long long n = 0; n <= t; ++n) r.rows[n] = laurent_add(x.ring, x.rows[n], y.rows[n]);
    return r;
}

template <class R>
WQSeries<R> wq_neg(const WQSeries<R>& x) {
    WQSeries<R> r = x;
    for (auto& row : r.rows)
        for (auto& v : row.c) v = x.ring.neg(v);
    return r;
}

template <class R>
WQSeries<R> wq_sub(const WQSeries<R>& x, const WQSeries<R>& y) {
    return wq_add(x, wq_neg(y));
}

template <class R>
WQSeries<R> wq_mul(const WQSeries<R>& x, const WQSeries<R>& y) {
    long long t = std::min(x.trunc, y.trunc);
    WQSeries<R> r(x.ring, t);
    for (long long a = 0; a <= t; ++a) {
        if (x.rows[a].is_zero()) continue;
        for (long long b = 0; a + b <= t; ++b) {
            if (y.rows[b].is_zero()) continue;
            r.rows[a + b] =
                laurent_add(x.ring, r.rows[a + b], laurent_mul(x.ring, x.rows[a], y.rows[b]));
        }
    }
    return r;
}

// multiply by a univariate series (valuation >= 0)
template <class R>
WQSeries<R> wq_mul_series(const WQSeries<R>& x, const QSeries<R>& s) {
    if (!s.is_zero() && s.val < 0)
        throw std::domain_error("wq_mul_series: univariate factor must have valuation >= 0");
    long long t = std::min(x.trunc, s.trunc);
    WQSeries<R> r(x.ring, t);
    for (long long a = 0; a <= t; ++a) {
        if (x.rows[a].is_zero()) continue;
        for (long long b = std::max<long long>(s.val, 0); a + b <= t; ++b) {
            auto sc = s.coeff(b);
            if (x.ring.is_zero(sc)) continue;
            r.rows[a + b] =
                laurent_add(x.ring, r.rows[a + b], laurent_scale(x.ring, x.rows[a], sc));
        }
    }
    return r;
}

// multiply every row by a fixed Laurent polynomial in w
template <class R>
WQSeries<R> wq_mul_wpoly(const WQSeries<R>& x, const LaurentPoly<R>& p) {
    WQSeries<R> r(x.ring, x.trunc);
    for (long long n = 0; n <= x.trunc; ++n) r.rows[n] = laurent_mul(x.ring, x.rows[n], p);
    return r;
}

template <class R>
WQSeries<R> wq_scale(const WQSeries<R>& x, const typename R::Elem& s) {
    WQSeries<R> r(x.ring, x.trunc);
    for (long long n = 0; n <= x.trunc; ++n) r.rows[n] = laurent_scale(x.ring, x.rows[n], s);
    return r;
}

// q d/dq and w d/dw
template <class R>
WQSeries<R> wq_delta_q(const WQSeries<R>& x) {
    WQSeries<R> r = x;
    for (long long n = 0; n <= x.trunc; ++n) {
        auto f = x.ring.from_long(n);
        for (auto& v : r.rows[n].c) v = x.ring.mul(v, f);
        laurent_normalize(x.ring, r.rows[n]);
    }
    return r;
}

template <class R>
WQSeries<R> wq_delta_w(const WQSeries<R>& x) {
    WQSeries<R> r = x;
    for (long long n = 0; n <= x.trunc; ++n) {
        for (std::size_t i = 0; i < r.rows[n].c.size(); ++i) {
            long long m = r.rows[n].lo + static_cast<long long>(i);
            r.rows[n].c[i] = x.ring.mul(r.rows[n].c[i], x.ring.from_long(m));
        }
        laurent_normalize(x.ring, r.rows[n]);
    }
    return r;
}

template <class R>
bool wq_equal(const WQSeries<R>& x, const WQSeries<R>& y, long long cap) {
    if (x.trunc < cap || y.trunc < cap) throw std::logic_error("wq_equal: insufficient trunc");
    for (long long n = 0; n <= cap; ++n) {
        long long lo = std::min(x.rows[n].is_zero() ? 0 : x.rows[n].lo,
                                y.rows[n].is_zero() ? 0 : y.rows[n].lo);
        long long hi = std::max(x.rows[n].is_zero() ? 0 : x.rows[n].hi(),
                                y.rows[n].is_zero() ? 0 : y.rows[n].hi());
        for (long long m = lo; m <= hi; ++m)
            if (!x.ring.equal(x.coeff(m, n), y.coeff(m, n))) return false;
    }
    return true;
}

template <class R>
bool wq_is_zero_through(const WQSeries<R>& x, long long cap) {
    if (x.trunc < cap) throw std::logic_error("wq_is_zero_through: insufficient trunc");
    for (long long n = 0; n <= cap; ++n)
        for (const auto& v : x.rows[n].c)
            if (!x.ring.is_zero(v)) return false;
    return true;
}

// specialize w to a unit of a (possibly different) ring; f maps coefficients
template <class R1, class R2, class F>
QSeries<R2> wq_eval_w(const WQSeries<R1>& x, const R2& ring2, const typename R2::Elem& w,
                      F&& map_coeff) {
    QSeries<R2> out(ring2, x.trunc);
    out.val = 0;
    out.c.assign(x.trunc + 1, ring2.zero());
    // power cache for w^m over the combined support
    long long lo = 0, hi = 0;
    for (auto& row : x.rows) {
        if (row.is_zero()) continue;
        lo = std::min(lo, row.lo);
        hi = std::max(hi, row.hi());
    }
    std::vector<typename R2::Elem> pos{ring2.one()}, neg{ring2.one()};
    for (long long e = 1; e <= hi; ++e) pos.push_back(ring2.mul(pos.back(), w));
    if (lo < 0) {
        auto winv = ring2.invert_unit(w);
        for (long long e = 1; e <= -lo; ++e) neg.push_back(ring2.mul(neg.back(), winv));
    }
    auto wpow = [&](long long m) { return m >= 0 ? pos[m] : neg[-m]; };
    for (long long n = 0; n <= x.trunc; ++n) {
        for (std::size_t i = 0; i < x.rows[n].c.size(); ++i) {
            if (x.ring.is_zero(x.rows[n].c[i])) continue;
            long long m = x.rows[n].lo + static_cast<long long>(i);
            out.c[n] = ring2.add(out.c[n],
                                 ring2.mul(map_coeff(x.rows[n].c[i]), wpow(m)));
        }
    }
    out.normalize();
    return out;
}

// row-wise moment at w = 1: sum_m m^j coeff(m, n)
template <class R>
QSeries<R> wq_moment(const WQSeries<R>& x, long j) {
    QSeries<R> out(x.ring, x.trunc);
    out.val = 0;
    out.c.assign(x.trunc + 1, x.ring.zero());
    for (long long n = 0; n <= x.trunc; ++n) {
        for (std::size_t i = 0; i < x.rows[n].c.size(); ++i) {
            if (x.ring.is_zero(x.rows[n].c[i])) continue;
            long long m = x.rows[n].lo + static_cast<long long>(i);
            auto wgt = x.ring.from_int(int_pow(Int(m), static_cast<unsigned long>(j)));
            out.c[n] = x.ring.add(out.c[n], x.ring.mul(wgt, x.rows[n].c[i]));
        }
    }
    out.normalize();
    return out;
}

// check the combinatorial support bound |m| <= n
template <class R>
bool wq_support_within_diagonal(const WQSeries<R>& x) {
    for (long long n = 0; n <= x.trunc; ++n) {
        if (x.rows[n].is_zero()) continue;
        if (x.rows[n].lo < -n || x.rows[n].hi() > n) return false;
    }
    return true;
}

}  // namespace quasirank
