#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quasirank/bernoulli.hpp"
#include "quasirank/cyclotomic.hpp"
#include "quasirank/rings.hpp"

#include <random>

using namespace quasirank;

namespace {

std::mt19937_64 rng(20080219);

Int random_int() {
    std::uniform_int_distribution<long long> d(-1000000, 1000000);
    return Int(d(rng));
}

// check the commutative-ring axioms on random triples
template <class R, class Gen>
void check_ring_axioms(const R& ring, Gen gen, int trials) {
    for (int t = 0; t < trials; ++t) {
        auto a = gen(), b = gen(), c = gen();
        CHECK(ring.equal(ring.add(a, b), ring.add(b, a)));
        CHECK(ring.equal(ring.mul(a, b), ring.mul(b, a)));
        CHECK(ring.equal(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c))));
        CHECK(ring.equal(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c))));
        CHECK(ring.equal(ring.mul(a, ring.add(b, c)),
                         ring.add(ring.mul(a, b), ring.mul(a, c))));
        CHECK(ring.equal(ring.add(a, ring.zero()), a));
        CHECK(ring.equal(ring.mul(a, ring.one()), a));
        CHECK(ring.is_zero(ring.add(a, ring.neg(a))));
    }
}

}  // namespace

TEST_CASE("ring axioms on randomized elements") {
    const int trials = 2500;  // 4 rings x 2500 = 10^4 random triples
    check_ring_axioms(IntegerRing{}, random_int, trials);
    check_ring_axioms(RationalRing{},
                      [] {
                          Int num = random_int();
                          Int den = random_int();
                          if (den == 0) den = 1;
                          return make_rat(num, den);
                      },
                      trials);
    ResidueRing z121(121);
    check_ring_axioms(z121, [&] { return z121.from_int(random_int()); }, trials);
    CyclotomicRing<RationalRing> c5(5, RationalRing{});
    check_ring_axioms(c5,
                      [&] {
                          auto e = c5.zero();
                          for (auto& x : e) x = Rat(random_int(), 7);
                          return e;
                      },
                      trials);
}

TEST_CASE("rational and residue arithmetic basics") {
    RationalRing q;
    CHECK(q.add(Rat(1, 3), Rat(1, 6)) == Rat(1, 2));

    ResidueRing z11(11);
    CHECK(z11.invert_unit(z11.from_long(12)) == 1);  // 12 = 1 (mod 11)

    ResidueRing z121(121);
    CHECK(z121.invert_unit(12) == 111);  // 12*111 = 1332 = 11*121 + 1

    // division by a non-unit reports the offending gcd
    try {
        z121.invert_unit(22);
        CHECK(false);
    } catch (const NonInvertibleError& e) {
        CHECK(e.gcd_with_modulus == 11);
    }
}

TEST_CASE("residue reduction commutes with integer arithmetic") {
    IntegerRing zi;
    ResidueRing z11(11);
    for (int t = 0; t < 500; ++t) {
        Int a = random_int(), b = random_int();
        CHECK(z11.from_int(zi.add(a, b)) == z11.add(z11.from_int(a), z11.from_int(b)));
        CHECK(z11.from_int(zi.mul(a, b)) == z11.mul(z11.from_int(a), z11.from_int(b)));
    }
}

TEST_CASE("cyclotomic polynomials by exact division") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});     // x^2 + 1
    CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});    // x^2 - x + 1
    CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK_THROWS_AS(cyclotomic_polynomial(0), std::domain_error);
}

TEST_CASE("conductor 1 ring is the base ring") {
    CyclotomicRing<IntegerRing> c1(1, IntegerRing{});
    CHECK(c1.degree() == 1);
    CHECK(c1.equal(c1.root_power(0), c1.one()));
    CHECK(c1.equal(c1.root_power(5), c1.one()));
}

TEST_CASE("zeta_4 squares to -1 and zeta_6^2 = zeta_6 - 1") {
    CyclotomicRing<IntegerRing> c4(4, IntegerRing{});
    auto i = c4.root_power(1);
    CHECK(c4.equal(c4.mul(i, i), c4.neg(c4.one())));

    CyclotomicRing<IntegerRing> c6(6, IntegerRing{});
    auto z = c6.root_power(1);
    CHECK(c6.equal(c6.mul(z, z), c6.sub(z, c6.one())));
}

TEST_CASE("root powers: reduction mod N and geometric-sum orthogonality") {
    CyclotomicRing<IntegerRing> c5(5, IntegerRing{});
    CHECK(c5.equal(c5.root_power(0), c5.one()));
    CHECK(c5.equal(c5.root_power(7), c5.root_power(2)));
    CHECK(c5.equal(c5.root_power(-1), c5.root_power(4)));
    auto s = c5.zero();
    for (long a = 0; a < 5; ++a) s = c5.add(s, c5.root_power(a));
    CHECK(c5.is_zero(s));
}

TEST_CASE("zeta_N^N = 1 and sum of zeta_N^{ja} vanishes unless N | j") {
    for (long n : {2L, 3L, 5L, 8L, 12L}) {
        CyclotomicRing<IntegerRing> cn(n, IntegerRing{});
        CHECK(cn.equal(cn.root_power(n), cn.one()));
        for (long j = 1; j <= n; ++j) {
            auto s = cn.zero();
            for (long a = 0; a < n; ++a)
                s = cn.add(s, cn.root_power(static_cast<long long>(j) * a));
            if (j % n == 0)
                CHECK(cn.equal(s, cn.from_long(n)));
            else
                CHECK(cn.is_zero(s));
        }
    }
}

TEST_CASE("cyclotomic inversion over Q(zeta)") {
    CyclotomicRing<RationalRing> c7(7, RationalRing{});
    auto x = c7.add(c7.root_power(1), c7.from_long(3));
    auto inv = c7.invert_unit(x);
    CHECK(c7.equal(c7.mul(x, inv), c7.one()));
    CHECK(!c7.try_invert(c7.zero()).has_value());

    // 1 - zeta_5 is not a unit of Z[zeta_5] (its norm is 5) but inverts over Q
    CyclotomicRing<IntegerRing> z5(5, IntegerRing{});
    CHECK(!z5.try_invert(z5.sub(z5.one(), z5.root_power(1))).has_value());
    // zeta_5 itself is a unit of Z[zeta_5]
    auto u = z5.try_invert(z5.root_power(2));
    REQUIRE(u.has_value());
    CHECK(z5.equal(z5.mul(*u, z5.root_power(2)), z5.one()));
}

TEST_CASE("mixed conductors embed into the lcm ring") {
    CyclotomicRing<IntegerRing> c3(3, IntegerRing{}), c12(12, IntegerRing{});
    auto z3 = embed(c3, c12, c3.root_power(1));
    CHECK(c12.equal(z3, c12.root_power(4)));
}

TEST_CASE("bernoulli numbers in the E2-pinning convention") {
    CHECK(bernoulli(0) == Rat(1));
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));   // so that 2j/B_j = 24 at j = 2
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(10) == Rat(5, 66));
    CHECK(bernoulli(3) == Rat(0));
}

TEST_CASE("von Staudt-Clausen denominators through j = 30") {
    for (long j = 2; j <= 30; j += 2)
        CHECK(rat_den(bernoulli(j)) == von_staudt_clausen_denominator(j));
}
