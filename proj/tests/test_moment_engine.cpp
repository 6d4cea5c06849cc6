#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quasirank/moment_engine.hpp"
#include "quasirank/partition_lab.hpp"
#include "quasirank/rank_lambert.hpp"

using namespace quasirank;
using namespace quasirank::engine;

namespace {

// oracle: R_k(x_1..x_k;q) = sum over k-marked symbols of prod x_i^{rho_i} q^{size}
SeriesCycQ durfee_multivariate_oracle(const CycQ& ring, const std::vector<CycQ::Elem>& pts,
                                      long long n_max) {
    SeriesCycQ out(ring, n_max);
    out.val = 0;
    out.c.assign(n_max + 1, ring.zero());
    long k = static_cast<long>(pts.size());
    for (long n = 1; n <= n_max; ++n) {
        lab::for_each_marked_durfee(k, n, [&](const lab::MarkedDurfeeSymbol& s) {
            auto rho = s.rank_vector();
            auto term = ring.one();
            for (long i = 0; i < k; ++i) term = ring.mul(term, ring.pow(pts[i], rho[i]));
            out.c[n] = ring.add(out.c[n], term);
        });
    }
    out.normalize();
    return out;
}

}  // namespace

TEST_CASE("hypergeometric and Lambert forms of R(w;q) agree bivariately") {
    IntegerRing ring;
    auto hyper = rank_gf_hyper(ring, 25);
    auto lambert = rank_gf_lambert(ring, 25);
    CHECK(wq_equal(hyper, lambert, 25));
}

TEST_CASE("rank rows match the enumeration tables and specialize correctly") {
    IntegerRing ring;
    const long long T = 20;
    auto bi = rank_gf_lambert(ring, T);
    CHECK(wq_support_within_diagonal(bi));
    auto table = lab::build_rank_crank_table(static_cast<long>(T));
    for (long n = 1; n <= T; ++n)
        for (long m = -n; m <= n; ++m) CHECK(bi.coeff(m, n) == table.rank_count(m, n));

    // q^4 row: w^3 + w + 1 + w^{-1} + w^{-3}
    for (long m : {-3L, -1L, 0L, 1L, 3L}) CHECK(bi.coeff(m, 4) == 1);
    CHECK(bi.coeff(2, 4) == 0);

    // w = 1 gives P, w = -1 gives f(q) with f_4 = -3
    auto at1 = wq_eval_rows(bi, ring, Int(1));
    CHECK(series_equal(at1, partition_series(ring, T), T));
    auto atm1 = wq_eval_rows(bi, ring, Int(-1));
    CHECK(atm1.coeff(4) == -3);
    CHECK(atm1.coeff(0) == 1);
}

TEST_CASE("crank rows match the enumeration tables, with the n = 1 boundary") {
    IntegerRing ring;
    const long long T = 20;
    auto bi = crank_gf(ring, T);
    CHECK(wq_support_within_diagonal(bi));
    // q^1 row emerges as w - 1 + w^{-1} from the product
    CHECK(bi.coeff(1, 1) == 1);
    CHECK(bi.coeff(0, 1) == -1);
    CHECK(bi.coeff(-1, 1) == 1);
    // q^4 row: w^4 + w^2 + 1 + w^{-2} + w^{-4}
    for (long m : {-4L, -2L, 0L, 2L, 4L}) CHECK(bi.coeff(m, 4) == 1);
    CHECK(bi.coeff(1, 4) == 0);

    auto table = lab::build_rank_crank_table(static_cast<long>(T));
    for (long n = 1; n <= T; ++n)
        for (long m = -n; m <= n; ++m) CHECK(bi.coeff(m, n) == table.crank_count(m, n));

    auto at1 = wq_eval_rows(bi, ring, Int(1));
    CHECK(series_equal(at1, partition_series(ring, T), T));
}

TEST_CASE("moment series: examples and the crank recurrence") {
    MomentEngine eng(25, /*checked=*/true);
    RationalRing q;

    // C_2 = 2 Phi_1 P
    auto c2 = eng.crank_moment(2);
    auto rhs = series_scale(series_mul(eng.phi_series(1), eng.partition_p(), 25), Rat(2));
    CHECK(series_equal(c2, rhs, 25));

    // R_2 anchors
    auto r2 = eng.rank_moment(2);
    CHECK(r2.coeff(4) == 20);
    CHECK(r2.coeff(6) == 80);

    // symmetrized series: eta_2(4) = 10 = D_2(4)
    auto sym = eng.symmetrized_series(1);
    CHECK(sym.coeff(4) == 10);
    CHECK(sym.coeff(4) == Rat(lab::count_marked_durfee(2, 4)));

    // delta_w path equals the recurrence path for C_2, C_4, C_6, C_8
    for (long a : {2L, 4L, 6L, 8L})
        CHECK(series_equal(eng.crank_moment(a), eng.crank_moment_recurrence(a), 25));
}

TEST_CASE("Lambert moment path equals the bivariate path") {
    const long long T = 40;
    RationalRing q;
    MomentEngine eng(T);
    auto jet = rank_jet(q, 8, T);
    for (long j = 1; j <= 8; ++j) {
        auto lam = jet_moment(jet, j);
        auto biv = eng.rank_moment(j);
        CHECK(series_equal(lam, biv, T));
    }
    // eta series via jets vs enumeration
    auto table = lab::build_rank_crank_table(20);
    for (long k : {2L, 4L, 6L}) {
        auto eta = eta_series_lambert(q, k, 20);
        for (long n = 1; n <= 20; ++n) CHECK(eta.coeff(n) == Rat(lab::eta_moment(table, k, n)));
    }
    // and over a residue ring
    ResidueRing z11(11);
    auto eta2 = eta_series_lambert(z11, 2, 30);
    for (long n = 1; n <= 20; ++n)
        CHECK(eta2.coeff(n) == z11.from_int(lab::eta_moment(table, 2, n)));
}

TEST_CASE("rank-crank PDE residual vanishes") {
    auto res = pde_residual(18);
    CHECK(wq_is_zero_through(res, 18));

    // degree bound and w = 1 collapse of the left side
    RationalRing q;
    auto C = crank_gf(q, 12);
    auto pent = pentagonal_series(q, 12);
    auto lhs = wq_mul(wq_mul(C, C), C);
    lhs = wq_mul_series(lhs, series_mul(pent, pent, 12));
    LaurentPoly<RationalRing> w;
    w.lo = 1;
    w.c = {Rat(1)};
    lhs = wq_mul_wpoly(lhs, w);
    for (long long n = 0; n <= 12; ++n) {
        if (lhs.rows[n].is_zero()) continue;
        CHECK(lhs.rows[n].hi() <= 3 * n + 1);
        CHECK(lhs.rows[n].lo >= -(3 * n + 1));
    }
    auto at1 = wq_eval_w(lhs, q, Rat(1), [](const Rat& v) { return v; });
    CHECK(series_equal(at1, partition_series(q, 12), 12));
}

TEST_CASE("moment identity: a = 2 degenerates to 0 = 0, a in {4,6,8} vanish") {
    MomentEngine eng(20);
    // both sides of the a = 2 case are identically zero with C_0 = P
    CHECK(eng.rankcrank_lhs(2).is_zero());
    CHECK(eng.rankcrank_rhs(2).is_zero());
    for (long a : {4L, 6L, 8L}) {
        auto res = eng.rankcrank_residual(a);
        CHECK(series_is_zero_through(res, 20));
    }
}

TEST_CASE("the explicit second/fourth moment display") {
    // 3 R_4 = -2(3 delta_q + 1) C_2 + 8 C_4 + 3(-12 delta_q + 1) R_2
    MomentEngine eng(25);
    RationalRing q;
    auto lhs = series_scale(eng.rank_moment(4), Rat(3));
    auto c2 = eng.crank_moment(2);
    auto rhs = series_scale(series_add(series_scale(delta_q(c2), Rat(3)), c2), Rat(-2));
    rhs = series_add(rhs, series_scale(eng.crank_moment(4), Rat(8)));
    auto r2 = eng.rank_moment(2);
    rhs = series_add(rhs,
                     series_scale(series_add(series_scale(delta_q(r2), Rat(-12)), r2), Rat(3)));
    CHECK(series_equal(lhs, rhs, 25));
}

TEST_CASE("Y series") {
    MomentEngine eng(20);
    // Y_2 degenerates to the zero series
    CHECK(eng.y_series(1).is_zero());
    // Y_4 is the a = 4 left side
    CHECK(series_equal(eng.y_series(2), eng.rankcrank_lhs(4), 20));
    // integrality of Y_{2k} coefficients for k <= 5
    for (long k = 1; k <= 5; ++k) {
        auto y = eng.y_series(k);
        for (long long n = 0; n <= 20; ++n) CHECK(rat_den(y.coeff(n)) == 1);
    }
}

TEST_CASE("solved recurrence reproduces the even rank moments") {
    MomentEngine eng(20);
    for (long k : {2L, 3L, 4L})
        CHECK(series_equal(eng.solve_r2k(k), eng.rank_moment(2 * k), 20));
}

TEST_CASE("P_k calculus") {
    CHECK(pk_poly(1) == RatPoly{{Rat(1)}});
    CHECK(pk_poly(2) == RatPoly{{Rat(1), Rat(-12)}});
    CHECK(pk_poly(3) == RatPoly{{Rat(1), Rat(-24), Rat(108)}});
    for (long k = 1; k <= 10; ++k) {
        CHECK(pk_poly(k) == pk_poly_explicit(k));
        CHECK(pk_poly(k).degree() == k - 1);
        if (k >= 2)
            for (auto& c : pk_poly(k).c) CHECK(rat_den(c) == 1);  // integer coefficients
    }
    // z V_k(z) = ((1+z)/2)^{2k} - ((1-z)/2)^{2k} as exact polynomials
    for (long k = 1; k <= 10; ++k) {
        RatPoly z{{Rat(0), Rat(1)}};
        RatPoly lhs = poly_mul(z, vk_poly(k));
        RatPoly plus{{Rat(1, 2), Rat(1, 2)}}, minus{{Rat(1, 2), Rat(-1, 2)}};
        RatPoly pp{{Rat(1)}}, mm{{Rat(1)}};
        for (long i = 0; i < 2 * k; ++i) {
            pp = poly_mul(pp, plus);
            mm = poly_mul(mm, minus);
        }
        CHECK(lhs == poly_add(pp, poly_scale(mm, Rat(-1))));
    }
    // P_{(l+1)/2} = ((l+1)/2)(1 + (1-24x)^{(l-1)/2}) (mod l)
    for (long ell : {5L, 7L, 11L, 13L}) {
        CHECK(pcong_check(ell));
        CHECK(pk_poly((ell + 1) / 2).degree() == (ell - 1) / 2);
    }
    // P_k(delta_q) applied to R_2 matches a direct expansion for k = 2
    MomentEngine eng(15);
    auto direct = series_add(eng.rank_moment(2),
                             series_scale(delta_q(eng.rank_moment(2)), Rat(-12)));
    CHECK(series_equal(eng.pk_applied_to_r2(2), direct, 15));
}

TEST_CASE("Durfee generating functions at points match enumeration") {
    IntegerRing zi;
    auto bi = rank_gf_lambert(zi, 12);
    CycQ c5(5, RationalRing{});

    // k = 2 at (zeta_5, zeta_5^2)
    std::vector<CycQ::Elem> pts{c5.root_power(1), c5.root_power(2)};
    auto lhs = durfee_gf_eval(c5, bi, pts);
    auto oracle = durfee_multivariate_oracle(c5, pts, 12);
    CHECK(series_equal(lhs, oracle, 12));

    // k = 1 is R(x;q) itself
    std::vector<CycQ::Elem> one_pt{c5.root_power(1)};
    CHECK(series_equal(durfee_gf_eval(c5, bi, one_pt), wq_eval_rows(bi, c5, c5.root_power(1)),
                       12));

    // specializing x_i = w^i recovers the full-rank generating function, w = zeta_7
    CycQ c7(7, RationalRing{});
    std::vector<CycQ::Elem> w_pts{c7.root_power(1), c7.root_power(2)};
    auto rk = durfee_gf_eval(c7, bi, w_pts);
    auto nf = lab::build_full_rank_table(2, 12);
    for (long n = 1; n <= 12; ++n) {
        auto expect = c7.zero();
        for (auto& [m, cnt] : nf.rows[n])
            expect = c7.add(expect, c7.mul_base(c7.root_power(m), Rat(cnt)));
        CHECK(c7.equal(rk.coeff(n), expect));
    }

    // degenerate points are rejected with a pointer to the derivative path
    std::vector<CycQ::Elem> dup{c5.root_power(1), c5.root_power(1)};
    CHECK_THROWS_AS(durfee_gf_eval(c5, bi, dup), DegeneratePointsError);
    std::vector<CycQ::Elem> recip{c5.root_power(1), c5.root_power(4)};
    CHECK_THROWS_AS(durfee_gf_eval(c5, bi, recip), DegeneratePointsError);
}

TEST_CASE("equal-arguments Durfee function via the derivative") {
    IntegerRing zi;
    auto bi = rank_gf_lambert(zi, 12);

    CycQ c5(5, RationalRing{});
    auto x5 = c5.root_power(1);
    auto lhs5 = durfee_gf_deriv(c5, bi, x5);
    auto oracle5 = durfee_multivariate_oracle(c5, {x5, x5}, 12);
    CHECK(series_equal(lhs5, oracle5, 12));

    // the "large k" regime for t = 3
    CycQ c3(3, RationalRing{});
    auto x3 = c3.root_power(1);
    CHECK(series_equal(durfee_gf_deriv(c3, bi, x3),
                       durfee_multivariate_oracle(c3, {x3, x3}, 12), 12));

    // row n = 1 of the w-derivative vanishes (N(0,1) = 1 only)
    CHECK(lhs5.coeff(1) == c5.zero());

    CHECK_THROWS_AS(durfee_gf_deriv(c5, bi, c5.one()), std::domain_error);
    CHECK_THROWS_AS(durfee_gf_deriv(c5, bi, c5.from_long(-1)), std::domain_error);
}

TEST_CASE("twisted second moment function R_2(a/c;q)") {
    IntegerRing zi;
    CHECK_THROWS_AS(twisted_r2(2, 4, 5), std::domain_error);

    for (auto [a, c, T] : std::vector<std::tuple<long, long, long long>>{{1, 2, 15}, {1, 3, 12}}) {
        auto tw = twisted_r2(a, c, T);
        auto bi = rank_gf_lambert(zi, T);
        // cross-check: [d/dw R]_{w = zeta_c^a} = sum_single - (1-zeta) sum_double.
        // (Direct differentiation of the Lambert form: the pentagonal exponent
        // n(3n+1)/2 plus the extra q^n from the double pole is 3n(n+1)/2.)
        auto zeta = tw.ring.root_power(2 * a);
        auto dw = wq_eval_rows_dw(bi, tw.ring, zeta);
        auto factor = tw.ring.sub(tw.ring.one(), zeta);
        auto combo = series_sub(tw.sum_single, series_scale(tw.sum_double, factor));
        CHECK(series_equal(dw, combo, T));
        // the n = 0 constant of the value: well-defined since zeta != 1
        auto inv = tw.ring.invert_unit(tw.ring.sub(tw.ring.one(), zeta));
        auto inv2 = tw.ring.mul(inv, inv);
        auto expect0 = tw.ring.neg(tw.ring.add(
            tw.ring.mul(tw.ring.mul(tw.ring.root_power(a), *tw.ring.from_rat(Rat(1, 2))), inv),
            tw.ring.mul(tw.ring.root_power(3 * a), inv2)));
        CHECK(tw.ring.equal(tw.value.coeff(0), expect0));
    }

    // c = 2: coefficients are rational (the imaginary coordinate vanishes)
    auto tw2 = twisted_r2(1, 2, 15);
    for (long long n = 0; n <= 15; ++n) CHECK(tw2.ring.is_scalar(tw2.value.coeff(n)));
}

TEST_CASE("twisted Eisenstein series") {
    // divisor-sum form vs the direct L double sum
    for (auto [j, a, c] : std::vector<std::array<long, 3>>{{1, 1, 2}, {2, 1, 3}, {3, 2, 5}}) {
        auto lhs = twisted_eisenstein(j, a, c, 20);
        auto rhs = twisted_eisenstein_by_lsum(j, a, c, 20);
        CHECK(series_equal(lhs, rhs, 20));
    }
    // j = 1, c = 2, a = 1: coefficient of q^n is 2 sum_{d|n} d (-1)^d; at n = 2: 2
    auto e = twisted_eisenstein(1, 1, 2, 10);
    CHECK(e.ring.equal(e.coeff(2), e.ring.from_long(2)));
    CHECK(e.ring.equal(e.coeff(1), e.ring.from_long(-2)));

    // j = 2: the series is odd under a -> -a
    auto p = twisted_eisenstein(2, 1, 5, 12);
    auto q = twisted_eisenstein(2, 4, 5, 12);
    CHECK(series_equal(p, series_neg(q), 12));

    // c = 1, j even: identically zero
    auto z = twisted_eisenstein(2, 0, 1, 12);
    CHECK(z.is_zero());
}

TEST_CASE("twisted moment series from rows vs enumeration") {
    IntegerRing zi;
    auto bi_rank = rank_gf_lambert(zi, 12);
    auto bi_crank = crank_gf(zi, 12);
    auto table = lab::build_rank_crank_table(12);

    // (R, 0, 1, 2) is f(q): q^4 coefficient -3
    auto f = twisted_moment_series('R', 0, 1, 2, bi_rank);
    CHECK(f.ring.equal(f.coeff(4), f.ring.from_long(-3)));

    // (C, 0, a, c) at q^1 is zeta + zeta^{-1} - 1
    auto c0 = twisted_moment_series('C', 0, 1, 5, bi_crank);
    auto expect =
        c0.ring.sub(c0.ring.add(c0.ring.root_power(1), c0.ring.root_power(-1)), c0.ring.one());
    CHECK(c0.ring.equal(c0.coeff(1), expect));

    // odd j with real zeta vanishes by symmetry
    auto odd = twisted_moment_series('R', 3, 1, 2, bi_rank);
    CHECK(odd.is_zero());

    // against the enumeration oracle, both kinds
    lab::CycIntRing c5i(5, IntegerRing{});
    auto r25 = twisted_moment_series('R', 2, 1, 5, bi_rank);
    auto c25 = twisted_moment_series('C', 2, 1, 5, bi_crank);
    for (long n = 1; n <= 12; ++n) {
        auto er = lab::twisted_rank_moment(table, c5i, 2, 1, n);
        auto ec = lab::twisted_crank_moment(table, c5i, 2, 1, n);
        for (long i = 0; i < c5i.degree(); ++i) {
            CHECK(r25.coeff(n)[i] == Rat(er[i]));
            CHECK(c25.coeff(n)[i] == Rat(ec[i]));
        }
    }
}

TEST_CASE("T_2(a/c;q) expansion") {
    CHECK(quarter_interval_s(1, 5) == 1);
    CHECK(quarter_interval_s(1, 12) == 0);
    CHECK(quarter_interval_s(11, 12) == 3);
    CHECK(quarter_interval_s(3, 5) == 2);
    CHECK_THROWS_AS(quarter_interval_s(1, 6), std::domain_error);
    CHECK_THROWS_AS(quarter_interval_s(1, 2), std::domain_error);
    CHECK_THROWS_AS(quarter_interval_s(5, 6), std::domain_error);
    CHECK_THROWS_AS(t2_series(1, 2, 50), std::domain_error);

    // a/c = 1/5: exponent scale lcm(10,24) = 120; the m = 0 terms give
    // valuation 12 with coefficient s - 3a/c = 2/5
    auto t2 = t2_series(1, 5, 100);
    CHECK(t2.exponent_scale == 120);
    CHECK(t2.series.val == 12);
    CHECK(t2.series.coeff(12) == Rat(2, 5));
    CHECK(t2.series.coeff(36) == Rat(7, 5));
    CHECK(t2.series.coeff(60) == Rat(12, 5));
    CHECK(t2.series.coeff(84) == Rat(17, 5));
    // determinism
    auto again = t2_series(1, 5, 100);
    CHECK(series_equal(t2.series, again.series, 100));
}
