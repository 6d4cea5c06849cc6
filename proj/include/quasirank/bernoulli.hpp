// Bernoulli numbers in the convention with B_2 = 1/6, pinned so that
// E_2 = 1 - 24 sum sigma_1(n) q^n (i.e. 2j/B_j = 24 at j = 2).
#pragma once

#include "quasirank/ints.hpp"

#include <mutex>
#include <vector>

namespace quasirank {

inline Rat bernoulli(long j) {
    if (j < 0) throw std::domain_error("bernoulli: negative index");
    static std::vector<Rat> cache{Rat(1)};  // B_0 = 1
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<long>(cache.size()) <= j) {
        long m = static_cast<long>(cache.size());
        // sum_{k=0}^{m} C(m+1,k) B_k = 0  =>  B_m = -1/C(m+1,m) * sum_{k<m} C(m+1,k) B_k
        Rat s = 0;
        for (long k = 0; k < m; ++k) s += Rat(binomial(m + 1, k)) * cache[k];
        cache.push_back(-s / Rat(binomial(m + 1, m)));
    }
    return cache[j];
}

// von Staudt-Clausen: for even j >= 2 the denominator of B_j is the product
// of the primes p with (p-1) | j.
inline Int von_staudt_clausen_denominator(long j) {
    Int d = 1;
    for (long p = 2; p <= j + 1; ++p) {
        if (!is_prime(p)) continue;
        if (j % (p - 1) == 0) d *= p;
    }
    return d;
}

}  // namespace quasirank
