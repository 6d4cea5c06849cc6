#include "quasirank/moment_engine.hpp"

#include "quasirank/partition_lab.hpp"

#include <algorithm>
#include <cmath>

namespace quasirank::engine {

// ---------------------------------------------------------------------------
// rational polynomials

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

RatPoly poly_scale(const RatPoly& a, const Rat& s) {
    RatPoly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

Rat poly_eval(const RatPoly& a, const Rat& x) {
    Rat acc = 0;
    for (long i = static_cast<long>(a.c.size()) - 1; i >= 0; --i) acc = acc * x + a.c[i];
    return acc;
}

RatPoly pk_poly(long k) {
    if (k < 0) throw std::domain_error("pk_poly: k >= 0");
    RatPoly p0;                 // P_0 = 0
    RatPoly p1{{Rat(1)}};       // P_1 = 1
    if (k == 0) return p0;
    if (k == 1) return p1;
    RatPoly lin{{Rat(1), Rat(-12)}};          // 1 - 12x
    RatPoly quad{{Rat(0), Rat(0), Rat(-36)}}; // -36 x^2
    for (long i = 2; i <= k; ++i) {
        RatPoly next = poly_add(poly_mul(lin, p1), poly_mul(quad, p0));
        p0 = std::move(p1);
        p1 = std::move(next);
    }
    return p1;
}

RatPoly pk_poly_explicit(long k) {
    if (k < 1) throw std::domain_error("pk_poly_explicit: k >= 1");
    RatPoly base{{Rat(1), Rat(-24)}};  // 1 - 24x
    RatPoly pow{{Rat(1)}};
    RatPoly acc;
    for (long j = 0; j <= k - 1; ++j) {
        acc = poly_add(acc, poly_scale(pow, Rat(binomial(2 * k, 2 * j + 1))));
        pow = poly_mul(pow, base);
    }
    return poly_scale(acc, Rat(1) / Rat(int_pow(Int(2), static_cast<unsigned long>(2 * k - 1))));
}

RatPoly vk_poly(long k) {
    RatPoly pk = pk_poly(k);
    RatPoly u{{Rat(1, 24), Rat(0), Rat(-1, 24)}};  // (1 - z^2)/24
    RatPoly acc;
    for (long i = static_cast<long>(pk.c.size()) - 1; i >= 0; --i) {
        acc = poly_mul(acc, u);
        acc = poly_add(acc, RatPoly{{pk.c[i]}});
    }
    return acc;
}

bool pcong_check(long ell) {
    if (ell <= 3 || !is_prime(ell)) throw std::domain_error("pcong_check: l must be a prime > 3");
    long k = (ell + 1) / 2;
    RatPoly pk = pk_poly(k);
    ResidueRing zl(static_cast<std::uint64_t>(ell));
    // left side mod l (P_k has integer coefficients for k >= 2)
    std::vector<ResidueRing::Elem> lhs(pk.c.size());
    for (std::size_t i = 0; i < pk.c.size(); ++i) {
        if (rat_den(pk.c[i]) != 1) return false;
        lhs[i] = zl.from_int(rat_num(pk.c[i]));
    }
    // right side: ((l+1)/2) (1 + (1-24x)^{(l-1)/2}) mod l
    long e = (ell - 1) / 2;
    std::vector<ResidueRing::Elem> pow{zl.one()};
    std::vector<ResidueRing::Elem> lin{zl.one(), zl.from_long(-24)};
    for (long t = 0; t < e; ++t) {
        std::vector<ResidueRing::Elem> next(pow.size() + 1, zl.zero());
        for (std::size_t i = 0; i < pow.size(); ++i) {
            next[i] = zl.add(next[i], zl.mul(pow[i], lin[0]));
            next[i + 1] = zl.add(next[i + 1], zl.mul(pow[i], lin[1]));
        }
        pow = std::move(next);
    }
    pow[0] = zl.add(pow[0], zl.one());
    auto half = zl.from_long(k);
    for (auto& v : pow) v = zl.mul(v, half);
    std::size_t n = std::max(lhs.size(), pow.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto a = i < lhs.size() ? lhs[i] : zl.zero();
        auto b = i < pow.size() ? pow[i] : zl.zero();
        if (!zl.equal(a, b)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// MomentEngine

MomentEngine::MomentEngine(long long T, bool checked) : T_(T), checked_(checked) {}

namespace {

// checked mode: the generating-function rows must reproduce the enumeration
// tables on a small overlap window
void check_rows_against_oracle(const WQSeries<RationalRing>& bi, bool crank) {
    long n_max = static_cast<long>(std::min<long long>(bi.trunc, 14));
    auto table = lab::build_rank_crank_table(n_max);
    for (long n = 1; n <= n_max; ++n)
        for (long m = -n; m <= n; ++m) {
            Int expect = crank ? table.crank_count(m, n) : table.rank_count(m, n);
            if (bi.coeff(m, n) != Rat(expect))
                throw std::logic_error("bivariate rows disagree with the enumeration oracle");
        }
}

}  // namespace

const WQSeries<RationalRing>& MomentEngine::rank_bivariate() {
    if (!rank_bi_) {
        rank_bi_ = rank_gf_lambert(ring_, T_);
        if (checked_) {
            if (!wq_support_within_diagonal(*rank_bi_))
                throw std::logic_error("rank bivariate: support exceeds |m| <= n");
            check_rows_against_oracle(*rank_bi_, false);
        }
    }
    return *rank_bi_;
}

const WQSeries<RationalRing>& MomentEngine::crank_bivariate() {
    if (!crank_bi_) {
        crank_bi_ = crank_gf(ring_, T_);
        if (checked_) {
            if (!wq_support_within_diagonal(*crank_bi_))
                throw std::logic_error("crank bivariate: support exceeds |m| <= n");
            check_rows_against_oracle(*crank_bi_, true);
        }
    }
    return *crank_bi_;
}

SeriesQ MomentEngine::partition_p() {
    if (!p_) p_ = partition_series(ring_, T_);
    return *p_;
}

SeriesQ MomentEngine::partition_p_inv_sq() {
    if (!p_inv_sq_) {
        SeriesQ pent = pentagonal_series(ring_, T_);
        p_inv_sq_ = series_mul(pent, pent, T_);
    }
    return *p_inv_sq_;
}

SeriesQ MomentEngine::phi_series(long j) {
    auto it = phi_.find(j);
    if (it == phi_.end()) it = phi_.emplace(j, eisenstein_phi(ring_, j, T_)).first;
    return it->second;
}

SeriesQ MomentEngine::rank_moment(long j) {
    if (j < 1) throw std::domain_error("rank_moment: j >= 1 (use partition_p for j = 0)");
    auto it = rank_mom_.find(j);
    if (it == rank_mom_.end()) it = rank_mom_.emplace(j, wq_moment(rank_bivariate(), j)).first;
    return it->second;
}

SeriesQ MomentEngine::crank_moment(long j) {
    if (j == 0) return partition_p();  // normalization C_0 := P, constant term included
    auto it = crank_mom_.find(j);
    if (it == crank_mom_.end()) it = crank_mom_.emplace(j, wq_moment(crank_bivariate(), j)).first;
    return it->second;
}

SeriesQ MomentEngine::crank_moment_recurrence(long a) {
    if (a < 2 || a % 2 != 0) throw std::domain_error("crank recurrence: a even >= 2");
    SeriesQ acc = series_scale(series_mul(phi_series(a - 1), partition_p(), T_),
                               ring_.from_long(2));
    for (long j = 1; j <= a / 2 - 1; ++j) {
        auto w = ring_.from_int(2 * binomial(a - 1, 2 * j - 1));
        acc = series_add(acc, series_scale(series_mul(phi_series(2 * j - 1),
                                                      crank_moment_recurrence(a - 2 * j), T_),
                                           w));
    }
    return acc;
}

SeriesQ MomentEngine::symmetrized_series(long k) {
    auto it = sym_.find(k);
    if (it != sym_.end()) return it->second;
    const auto& bi = rank_bivariate();
    long d = (2 * k - 1) / 2;
    SeriesQ out(ring_, T_);
    out.val = 0;
    out.c.assign(T_ + 1, ring_.zero());
    for (long long n = 1; n <= T_; ++n) {
        for (std::size_t i = 0; i < bi.rows[n].c.size(); ++i) {
            if (ring_.is_zero(bi.rows[n].c[i])) continue;
            long long m = bi.rows[n].lo + static_cast<long long>(i);
            Int w = binomial(Int(m + d), 2 * k);
            if (w == 0) continue;
            out.c[n] = ring_.add(out.c[n], ring_.mul(ring_.from_int(w), bi.rows[n].c[i]));
        }
    }
    out.normalize();
    sym_.emplace(k, out);
    return out;
}

SeriesQ MomentEngine::y_series(long k) {
    auto it = y_.find(k);
    if (it != y_.end()) return it->second;
    SeriesQ acc = series_zero(ring_, T_);
    for (long i = 0; i <= k - 1; ++i) {
        long s = 2 * k - 2 * i;
        SeriesQ inner = series_zero(ring_, T_);
        for (long alpha = 0; alpha <= s; alpha += 2) {
            for (long beta = 0; alpha + beta <= s; beta += 2) {
                long gamma = s - alpha - beta;
                if (gamma % 2 != 0) continue;
                Int w = multinomial3(s, alpha, beta, gamma);
                SeriesQ term = series_mul(crank_moment(alpha), crank_moment(beta), T_);
                term = series_mul(term, crank_moment(gamma), T_);
                inner = series_add(inner, series_scale(term, ring_.from_int(w)));
            }
        }
        acc = series_add(acc, series_scale(inner, ring_.from_int(binomial(2 * k, 2 * i))));
    }
    acc = series_mul(acc, partition_p_inv_sq(), T_);
    Int c2 = 3 * (int_pow(Int(2), static_cast<unsigned long>(2 * k - 1)) - 1);
    acc = series_sub(acc, series_scale(crank_moment(2), ring_.from_int(c2)));
    y_.emplace(k, acc);
    return acc;
}

SeriesQ MomentEngine::rankcrank_lhs(long a) {
    if (a < 2 || a % 2 != 0) throw std::domain_error("rankcrank: a even >= 2");
    return y_series(a / 2);  // Y_{2k} with 2k = a is exactly the left side
}

SeriesQ MomentEngine::rankcrank_rhs(long a) {
    if (a < 2 || a % 2 != 0) throw std::domain_error("rankcrank: a even >= 2");
    SeriesQ acc = series_scale(rank_moment(a), ring_.from_rat(make_rat(Int((a - 1) * (a - 2)), 2)).value());
    for (long i = 1; i <= a / 2 - 1; ++i) {
        Int w1 = 6 * binomial(a, 2 * i) * (int_pow(Int(2), static_cast<unsigned long>(2 * i - 1)) - 1);
        acc = series_add(acc, series_scale(delta_q(rank_moment(a - 2 * i)), ring_.from_int(w1)));
        Int w2 = binomial(a, 2 * i + 2) * (int_pow(Int(2), static_cast<unsigned long>(2 * i + 1)) - 1) -
                 int_pow(Int(2), static_cast<unsigned long>(2 * i)) * binomial(a, 2 * i + 1) +
                 binomial(a, 2 * i);
        acc = series_add(acc, series_scale(rank_moment(a - 2 * i), ring_.from_int(w2)));
    }
    return acc;
}

SeriesQ MomentEngine::solve_r2k(long k) {
    if (k < 1) throw std::domain_error("solve_r2k: k >= 1");
    if (k == 1) return rank_moment(2);
    auto it = solved_.find(k);
    if (it != solved_.end()) return it->second;
    SeriesQ acc = y_series(k);
    for (long i = 1; i <= k - 1; ++i) {
        Int w1 = 6 * binomial(2 * k, 2 * i) *
                 (int_pow(Int(2), static_cast<unsigned long>(2 * i - 1)) - 1);
        acc = series_sub(acc, series_scale(delta_q(solve_r2k(k - i)), ring_.from_int(w1)));
        Int w2 = binomial(2 * k, 2 * i + 2) *
                     (int_pow(Int(2), static_cast<unsigned long>(2 * i + 1)) - 1) -
                 int_pow(Int(2), static_cast<unsigned long>(2 * i)) * binomial(2 * k, 2 * i + 1) +
                 binomial(2 * k, 2 * i);
        acc = series_sub(acc, series_scale(solve_r2k(k - i), ring_.from_int(w2)));
    }
    acc = series_scale(acc, make_rat(1, Int((2 * k - 1) * (k - 1))));
    solved_.emplace(k, acc);
    return acc;
}

SeriesQ MomentEngine::pk_applied_to_r2(long k) {
    RatPoly pk = pk_poly(k);
    std::vector<Rat> coeffs(pk.c.begin(), pk.c.end());
    return apply_delta_poly(coeffs, rank_moment(2));
}

// ---------------------------------------------------------------------------
// rank-crank PDE

WQSeries<RationalRing> pde_residual(long long T) {
    RationalRing ring;
    WQSeries<RationalRing> C = crank_gf(ring, T);
    WQSeries<RationalRing> R = rank_gf_lambert(ring, T);
    QSeries<RationalRing> pent = pentagonal_series(ring, T);

    WQSeries<RationalRing> lhs = wq_mul(wq_mul(C, C), C);
    lhs = wq_mul_series(lhs, series_mul(pent, pent, T));
    LaurentPoly<RationalRing> w;
    w.lo = 1;
    w.c = {Rat(1)};
    lhs = wq_mul_wpoly(lhs, w);

    LaurentPoly<RationalRing> one_minus_w_sq;  // (1-w)^2
    one_minus_w_sq.lo = 0;
    one_minus_w_sq.c = {Rat(1), Rat(-2), Rat(1)};
    LaurentPoly<RationalRing> w_sq_minus_one;  // w^2 - 1
    w_sq_minus_one.lo = 0;
    w_sq_minus_one.c = {Rat(-1), Rat(0), Rat(1)};

    WQSeries<RationalRing> rhs =
        wq_scale(wq_mul_wpoly(wq_delta_q(R), one_minus_w_sq), Rat(3));
    rhs = wq_add(rhs, wq_scale(wq_mul_wpoly(wq_delta_w(wq_delta_w(R)), one_minus_w_sq),
                               Rat(1, 2)));
    rhs = wq_sub(rhs, wq_scale(wq_mul_wpoly(wq_delta_w(R), w_sq_minus_one), Rat(1, 2)));
    rhs = wq_add(rhs, wq_mul_wpoly(R, w));

    return wq_sub(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Durfee generating functions at points

SeriesCycQ durfee_gf_eval(const CycQ& ring, const WQSeries<IntegerRing>& rank_bi,
                          const std::vector<CycQ::Elem>& points) {
    const std::size_t k = points.size();
    if (k == 0) throw std::domain_error("durfee_gf_eval: need at least one point");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && ring.equal(points[i], points[j]))
                throw DegeneratePointsError(
                    "durfee_gf_eval: coincident points (use durfee_gf_deriv)");
            if (ring.equal(ring.mul(points[i], points[j]), ring.one()))
                throw DegeneratePointsError(
                    "durfee_gf_eval: x_i x_j = 1 (use durfee_gf_deriv)");
        }
    SeriesCycQ acc = series_zero(ring, rank_bi.trunc);
    for (std::size_t i = 0; i < k; ++i) {
        auto den = ring.one();
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            den = ring.mul(den, ring.sub(points[i], points[j]));
            den = ring.mul(den,
                           ring.sub(ring.one(), ring.invert_unit(ring.mul(points[i], points[j]))));
        }
        SeriesCycQ ri = wq_eval_rows(rank_bi, ring, points[i]);
        acc = series_add(acc, series_scale(ri, ring.invert_unit(den)));
    }
    return acc;
}

SeriesCycQ durfee_gf_deriv(const CycQ& ring, const WQSeries<IntegerRing>& rank_bi,
                           const CycQ::Elem& x) {
    auto xsq = ring.mul(x, x);
    if (ring.equal(xsq, ring.one()))
        throw std::domain_error("durfee_gf_deriv: x^2 = 1 is outside the formula's domain");
    SeriesCycQ d = wq_eval_rows_dw(rank_bi, ring, x);
    auto den = ring.sub(ring.one(), ring.invert_unit(xsq));
    return series_scale(d, ring.invert_unit(den));
}

// ---------------------------------------------------------------------------
// twisted series

TwistedR2 twisted_r2(long a, long c, long long T) {
    if (!(0 < a && a < c)) throw std::domain_error("twisted_r2: need 0 < a < c");
    if (gcd_ll(a, c) != 1) throw std::domain_error("twisted_r2: need gcd(a, c) = 1");
    CycQ ring(2 * c, RationalRing{});
    auto zeta = ring.root_power(2 * a);  // zeta_c^a
    SeriesCycQ p = partition_series(ring, T);
    SeriesCycQ s1 = series_mul(bilateral_single(ring, zeta, T), p, T);
    SeriesCycQ s2 = series_mul(bilateral_double(ring, zeta, T), p, T);
    auto half = *ring.from_rat(Rat(1, 2));
    SeriesCycQ value =
        series_add(series_scale(s1, ring.mul(ring.root_power(a), half)),
                   series_scale(s2, ring.root_power(3 * a)));
    return TwistedR2(ring, std::move(value), std::move(s1), std::move(s2));
}

SeriesCycQ twisted_eisenstein(long j, long a, long c, long long T) {
    if (j < 1) throw std::domain_error("twisted_eisenstein: j >= 1");
    CycQ ring(c, RationalRing{});
    bool j_even = (j % 2 == 0);
    // weight per divisor class: zeta^{ad} - (-1)^j zeta^{-ad}, cached by ad mod c
    std::vector<CycQ::Elem> wcache(c);
    std::vector<char> have(c, 0);
    SeriesCycQ out(ring, T);
    out.val = 0;
    out.c.assign(T + 1, ring.zero());
    for (long long d = 1; d <= T; ++d) {
        long r = static_cast<long>(pos_mod(a * d, c));
        if (!have[r]) {
            auto w = ring.root_power(r);
            auto winv = ring.root_power(-r);
            wcache[r] = j_even ? ring.sub(w, winv) : ring.add(w, winv);
            have[r] = 1;
        }
        if (ring.is_zero(wcache[r])) continue;
        auto v = ring.mul_base(wcache[r],
                               Rat(int_pow(Int(d), static_cast<unsigned long>(j))));
        for (long long n = d; n <= T; n += d) out.c[n] = ring.add(out.c[n], v);
    }
    out.normalize();
    return out;
}

SeriesCycQ twisted_eisenstein_by_lsum(long j, long a, long c, long long T) {
    CycQ ring(c, RationalRing{});
    bool j_even = (j % 2 == 0);
    SeriesCycQ out(ring, T);
    out.val = 0;
    out.c.assign(T + 1, ring.zero());
    for (long long m = 1; m <= T; ++m) {
        auto w = ring.root_power(pos_mod(a * m, c));
        auto winv = ring.root_power(pos_mod(-a * m, c));
        auto wgt = j_even ? ring.sub(w, winv) : ring.add(w, winv);
        if (ring.is_zero(wgt)) continue;
        wgt = ring.mul_base(wgt, Rat(int_pow(Int(m), static_cast<unsigned long>(j))));
        for (long long n = 1; n * m <= T; ++n) out.c[n * m] = ring.add(out.c[n * m], wgt);
    }
    out.normalize();
    return out;
}

SeriesCycQ twisted_moment_series(char kind, long j, long a, long c,
                                 const WQSeries<IntegerRing>& bi) {
    if (kind != 'R' && kind != 'C') throw std::domain_error("twisted_moment_series: kind R or C");
    if (!(0 < a && a < c)) throw std::domain_error("twisted_moment_series: need 0 < a < c");
    CycQ ring(c, RationalRing{});
    SeriesCycQ out(ring, bi.trunc);
    out.val = 0;
    out.c.assign(bi.trunc + 1, ring.zero());
    for (long long n = 1; n <= bi.trunc; ++n) {
        for (std::size_t i = 0; i < bi.rows[n].c.size(); ++i) {
            const Int& cnt = bi.rows[n].c[i];
            if (cnt == 0) continue;
            long long m = bi.rows[n].lo + static_cast<long long>(i);
            Int w = int_pow(Int(m), static_cast<unsigned long>(j)) * cnt;
            if (w == 0) continue;
            out.c[n] = ring.add(out.c[n], ring.mul_base(ring.root_power(a * m), Rat(w)));
        }
    }
    out.normalize();
    return out;
}

int quarter_interval_s(long a, long c) {
    // boundary values a/c in {0, 1/6, 1/2, 5/6} have no s
    if (a <= 0 || a >= c || 6 * a == c || 2 * a == c || 6 * a == 5 * c)
        throw std::domain_error("quarter_interval_s: a/c on an excluded boundary");
    if (6 * a < c) return 0;
    if (2 * a < c) return 1;
    if (6 * a < 5 * c) return 2;
    return 3;
}

T2Series t2_series(long a, long c, long long T) {
    if (!(0 < a && a < c)) throw std::domain_error("t2_series: need 0 < a < c");
    int s = quarter_interval_s(a, c);
    long long E = lcm_ll(2 * c, 24);
    RationalRing ring;

    std::map<long long, Rat> acc;  // exponent -> coefficient, before the P factor
    Rat pref = Rat(s) - make_rat(Int(3 * a), Int(c));

    long long mbound = static_cast<long long>(std::max<double>(
                           4.0, 2.0 + s + std::sqrt(2.0 * T / (3.0 * E)) * 2.0)) +
                       4;
    for (long long m = -mbound; m <= mbound; ++m) {
        Rat sign = (pos_mod(m, 2) == 0) ? Rat(1) : Rat(-1);
        long long D = E * m + (E / c) * a;  // exponent of the pole factor, never zero
        long long baseA = E * (m * (3 * m + 1) / 2 + m * s) + (E / (2 * c)) * a;
        long long baseB = E * (3 * m * (m + 1) / 2 + m * s) + 3 * (E / (2 * c)) * a;
        if (D > 0) {
            for (long long j = 0; baseA + D * j <= T; ++j) acc[baseA + D * j] += pref * sign;
            for (long long j = 0; baseB + D * j <= T; ++j)
                acc[baseB + D * j] += Rat(j + 1) * sign;
        } else {
            long long Dp = -D;
            // 1/(1-q^D) = -sum_{j>=1} q^{Dp j};  1/(1-q^D)^2 = sum_{j>=0} (j+1) q^{Dp (j+2)}
            for (long long j = 1; baseA + Dp * j <= T; ++j) acc[baseA + Dp * j] -= pref * sign;
            for (long long j = 0; baseB + Dp * (j + 2) <= T; ++j)
                acc[baseB + Dp * (j + 2)] += Rat(j + 1) * sign;
        }
    }

    QSeries<RationalRing> sum(ring, T);
    if (!acc.empty()) {
        long long lo = acc.begin()->first;
        long long hi = acc.rbegin()->first;
        sum.val = lo;
        sum.c.assign(hi - lo + 1, Rat(0));
        for (auto& [e, v] : acc) sum.c[e - lo] = v;
        sum.normalize();
    }
    QSeries<RationalRing> p = rescale(partition_series(ring, T / E + 1), E);
    T2Series out{E, series_mul(sum, p, T)};
    return out;
}

}  // namespace quasirank::engine
