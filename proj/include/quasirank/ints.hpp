// Arbitrary-precision integer/rational aliases and small number-theoretic helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quasirank {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// cpp_rational's two-argument constructor insists on canonical input;
// build fractions by exact division instead.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    return Rat(num) / Rat(den);
}

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Floor division / nonnegative remainder for possibly negative arguments.
inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline long long pos_mod(long long a, long long b) { return a - floor_div(a, b) * b; }

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(top, k) for arbitrary integer top (possibly negative), k >= 0.
inline Int binomial(const Int& top, long k) {
    if (k < 0) return 0;
    Int num = 1;
    for (long t = 0; t < k; ++t) num *= (top - t);
    return num / factorial(k);
}
inline Int binomial(long top, long k) { return binomial(Int(top), k); }

inline Int multinomial3(long n, long a, long b, long c) {
    if (a + b + c != n) throw std::invalid_argument("multinomial3: parts must sum to n");
    return factorial(n) / (factorial(a) * factorial(b) * factorial(c));
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long long lcm_ll(long long a, long long b) { return a / gcd_ll(a, b) * b; }

// Legendre symbol (a|p) for odd prime p, computed by Euler's criterion.
inline int legendre_symbol(long long a, long long p) {
    a = pos_mod(a, p);
    if (a == 0) return 0;
    long long r = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

inline long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace quasirank
