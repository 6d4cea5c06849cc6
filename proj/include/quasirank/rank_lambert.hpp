// Lambert-series path for rank moment series at large truncation.
//
// Substituting w = 1 + eps into the Lambert form of R(w;q) and truncating at
// eps^J gives exact closed forms for every bilateral term:
//   n = 0:  (1-w)/(1-w) cancels to the constant 1 (never expanded),
//   n > 0:  contributes (-1)^{n+1} q^{pent(n)+ni} / (1-q^n)^{i+1} to eps^{i+1},
//   n = -m: contributes (-1)^{m+i} C(j+i-1,i) q^{m(3m-1)/2+mj} to eps^{i+1}.
// Multiplying the jet by P(q) yields [eps^i] R(1+eps;q); the moments follow
// from delta_w^j = sum_i S(j,i) w^i d_w^i evaluated at w = 1.
//
// This route is equivalence-tested against the bivariate row path wherever
// both are affordable and is the only practical one for q-indices in the
// thousands (the explicit eta congruences and the scanner need it).
#pragma once

#include "quasirank/qseries.hpp"

#include <mutex>
#include <vector>

namespace quasirank {

// Stirling numbers of the second kind S(j,i)
inline Int stirling2(long j, long i) {
    if (i < 0 || i > j) return 0;
    if (j == 0) return i == 0 ? 1 : 0;
    static std::vector<std::vector<Int>> table{{Int(1)}};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<long>(table.size()) <= j) {
        long n = static_cast<long>(table.size());
        std::vector<Int> row(n + 1);
        row[0] = 0;
        row[n] = 1;
        for (long k = 1; k < n; ++k) row[k] = table[n - 1][k - 1] + Int(k) * table[n - 1][k];
        table.push_back(std::move(row));
    }
    return table[j][i];
}

// comp[i] = [eps^i] R(1+eps; q), i = 0..J, each valid through q^T
template <class R>
std::vector<QSeries<R>> rank_jet(const R& ring, int J, long long T) {
    std::vector<std::vector<typename R::Elem>> acc(
        J + 1, std::vector<typename R::Elem>(T + 1, ring.zero()));
    acc[0][0] = ring.one();  // the cancelled n = 0 term

    // n > 0: to eps^{i+1}: (-1)^{n+1} q^{pent+ni} / (1-q^n)^{i+1}
    for (long long n = 1;; ++n) {
        long long pent = n * (3 * n + 1) / 2;
        if (pent > T) break;
        bool pos = (n % 2 == 1);  // sign of (-1)^{n+1}
        for (int i = 0; i + 1 <= J; ++i) {
            long long base = pent + n * i;
            if (base > T) break;
            Int binom = 1;  // C(s+i, i), updated incrementally over s
            for (long long s = 0; base + n * s <= T; ++s) {
                if (s > 0) binom = binom * (s + i) / s;
                auto v = ring.from_int(binom);
                auto& slot = acc[i + 1][base + n * s];
                slot = pos ? ring.add(slot, v) : ring.sub(slot, v);
            }
        }
    }
    // n = -m < 0: to eps^{i+1}: (-1)^{m+i} C(j+i-1, i) q^{m(3m-1)/2 + mj}, j >= 1
    for (long long m = 1;; ++m) {
        long long pent = m * (3 * m - 1) / 2;
        if (pent + m > T) break;
        for (int i = 0; i + 1 <= J; ++i) {
            bool pos = ((m + i) % 2 == 0);
            Int binom = 1;  // C(j+i-1, i) at j = 1 is C(i,i) = 1
            for (long long j = 1; pent + m * j <= T; ++j) {
                if (j > 1) binom = binom * (j + i - 1) / (j - 1);
                auto v = ring.from_int(binom);
                auto& slot = acc[i + 1][pent + m * j];
                slot = pos ? ring.add(slot, v) : ring.sub(slot, v);
            }
        }
    }

    QSeries<R> p = partition_series(ring, T);
    std::vector<QSeries<R>> comp;
    comp.reserve(J + 1);
    for (int i = 0; i <= J; ++i) {
        QSeries<R> s(ring, T);
        s.val = 0;
        s.c = std::move(acc[i]);
        s.normalize();
        comp.push_back(series_mul(s, p, T));
    }
    return comp;
}

// delta_w^j R at w = 1 from a jet: sum_i S(j,i) i! comp[i]
template <class R>
QSeries<R> jet_moment(const std::vector<QSeries<R>>& jet, long j) {
    const R& ring = jet.at(0).ring;
    QSeries<R> out = series_zero(ring, jet[0].trunc);
    for (long i = 0; i <= j && i < static_cast<long>(jet.size()); ++i) {
        Int w = stirling2(j, i) * factorial(i);
        if (w == 0) continue;
        out = series_add(out, series_scale(jet[i], ring.from_int(w)));
    }
    return out;
}

// R_j(q) = sum_{n>=1} N_j(n) q^n via the Lambert path (j >= 1)
template <class R>
QSeries<R> rank_moment_series_lambert(const R& ring, long j, long long T) {
    if (j < 1) throw std::domain_error("rank_moment_series_lambert: j >= 1");
    auto jet = rank_jet(ring, static_cast<int>(j), T);
    return jet_moment(jet, j);
}

// coefficients a_t of C(x+d, k) = sum_t a_t x^t
inline std::vector<Rat> symmetrized_weight_poly(long k) {
    long d = (k - 1) / 2;
    std::vector<Rat> poly{Rat(1)};
    for (long t = 0; t < k; ++t) {
        // multiply by (x + d - t)
        std::vector<Rat> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] += poly[i] * Rat(d - t);
        }
        poly = std::move(next);
    }
    Rat kf(factorial(k));
    for (auto& c : poly) c /= kf;
    return poly;
}

// sum_{n>=1} eta_k(n) q^n via the Lambert path (k even for the nonzero cases)
template <class R>
QSeries<R> eta_series_lambert(const R& ring, long k, long long T) {
    auto weights = symmetrized_weight_poly(k);
    auto jet = rank_jet(ring, static_cast<int>(k), T);
    QSeries<R> out = series_zero(ring, T);
    for (long t = 1; t < static_cast<long>(weights.size()); ++t) {
        if (weights[t] == 0) continue;
        auto c = ring.from_rat(weights[t]);
        if (!c)
            throw std::domain_error(
                "eta_series_lambert: weight denominator not invertible in ring");
        out = series_add(out, series_scale(jet_moment(jet, t), *c));
    }
    return out;
}

}  // namespace quasirank
