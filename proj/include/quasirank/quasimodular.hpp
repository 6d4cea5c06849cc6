// Quasimodular fitting: express a q-series exactly as a polynomial in
// E2, E4, E6. The candidate is determined from the first D coefficients
// (D = number of monomials) and then verified through check_to; linear
// independence of the monomials makes the fit unique over Q, so agreement on
// the unconstrained coefficients is genuine evidence rather than curve
// fitting. Infeasibility is a meaningful negative result, reported as a
// NotInClassError rather than a crash.
#pragma once

#include "quasirank/linalg.hpp"
#include "quasirank/qseries.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace quasirank {

struct NotInClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QmMonomial {
    long a = 0, b = 0, c = 0;  // E2^a E4^b E6^c
    long weight() const { return 2 * a + 4 * b + 6 * c; }
    std::string name() const {
        if (a == 0 && b == 0 && c == 0) return "1";
        std::ostringstream os;
        if (a) os << "E2^" << a;
        if (b) os << (a ? "*" : "") << "E4^" << b;
        if (c) os << (a || b ? "*" : "") << "E6^" << c;
        return os.str();
    }
};

// all monomials with weight <= W (or == W when exact_weight), optionally E2-free
inline std::vector<QmMonomial> qm_monomials(long W, bool e2_free = false,
                                            bool exact_weight = false) {
    std::vector<QmMonomial> out;
    for (long a = 0; 2 * a <= W; ++a) {
        if (e2_free && a > 0) break;
        for (long b = 0; 2 * a + 4 * b <= W; ++b)
            for (long c = 0; 2 * a + 4 * b + 6 * c <= W; ++c) {
                if (exact_weight && 2 * a + 4 * b + 6 * c != W) continue;
                out.push_back({a, b, c});
            }
    }
    return out;
}

template <class R>
std::vector<QSeries<R>> qm_monomial_series(const R& ring, const std::vector<QmMonomial>& monos,
                                           long long T) {
    long max_a = 0, max_b = 0, max_c = 0;
    for (auto& m : monos) {
        max_a = std::max(max_a, m.a);
        max_b = std::max(max_b, m.b);
        max_c = std::max(max_c, m.c);
    }
    auto powers = [&](const QSeries<R>& base, long maxe) {
        std::vector<QSeries<R>> p{series_one(ring, T)};
        for (long e = 1; e <= maxe; ++e) p.push_back(series_mul(p.back(), base, T));
        return p;
    };
    auto e2p = powers(eisenstein_e(ring, 2, T), max_a);
    auto e4p = powers(eisenstein_e(ring, 4, T), max_b);
    auto e6p = powers(eisenstein_e(ring, 6, T), max_c);
    std::vector<QSeries<R>> out;
    out.reserve(monos.size());
    for (auto& m : monos)
        out.push_back(series_mul(series_mul(e2p[m.a], e4p[m.b], T), e6p[m.c], T));
    return out;
}

template <class R>
struct QuasimodularFit {
    long max_weight = 0;
    bool e2_free = false;
    bool exact_weight = false;
    std::vector<QmMonomial> monomials;       // only those with nonzero coefficient
    std::vector<typename R::Elem> coeffs;
    long long determined_from = 0;           // leading coefficients used for the solve
    long long residual_checked_to = 0;
    bool unique = false;

    QSeries<R> reconstruct(const R& ring, long long T) const {
        auto series = qm_monomial_series(ring, monomials, T);
        QSeries<R> acc = series_zero(ring, T);
        for (std::size_t i = 0; i < monomials.size(); ++i)
            acc = series_add(acc, series_scale(series[i], coeffs[i]));
        return acc;
    }
};

struct QmFitOptions {
    bool e2_free = false;
    bool exact_weight = false;
    // for Z/l^2 targets: the prime l (solve by lifting); 0 means ordinary solve
    long lift_prime = 0;
};

template <class R>
QuasimodularFit<R> quasimodular_fit(const R& ring, const QSeries<R>& target, long W,
                                    long long check_to, QmFitOptions opts = {}) {
    if (!target.is_zero() && target.val < 0)
        throw std::domain_error("quasimodular_fit: target valuation must be >= 0");
    if (target.trunc < check_to)
        throw std::domain_error("quasimodular_fit: target not valid through check_to");
    auto monos = qm_monomials(W, opts.e2_free, opts.exact_weight);
    const long long D = static_cast<long long>(monos.size());
    if (check_to + 1 < D)
        throw std::domain_error("quasimodular_fit: need at least D coefficients");
    auto series = qm_monomial_series(ring, monos, check_to);

    auto solve_rows = [&](long long nrows) {
        std::vector<std::vector<typename R::Elem>> A(nrows);
        std::vector<typename R::Elem> b(nrows);
        for (long long e = 0; e < nrows; ++e) {
            A[e].resize(monos.size());
            for (std::size_t m = 0; m < monos.size(); ++m) A[e][m] = series[m].coeff(e);
            b[e] = target.coeff(e);
        }
        if constexpr (std::is_same_v<R, ResidueRing>) {
            if (opts.lift_prime > 0) return solve_mod_prime_square(ring, opts.lift_prime, A, b);
        }
        return solve_linear(ring, A, b);
    };

    long long used = D;
    auto sol = solve_rows(used);
    if (sol.consistent && !sol.unique) {
        // degenerate leading window (possible mod l); constrain with all rows
        used = check_to + 1;
        sol = solve_rows(used);
    }
    if (!sol.consistent)
        throw NotInClassError("quasimodular_fit: target is not in the span (weight " +
                              std::to_string(W) + ")");

    QuasimodularFit<R> fit;
    fit.max_weight = W;
    fit.e2_free = opts.e2_free;
    fit.exact_weight = opts.exact_weight;
    fit.determined_from = used;
    fit.unique = sol.unique;
    for (std::size_t m = 0; m < monos.size(); ++m) {
        if (ring.is_zero(sol.x[m])) continue;
        fit.monomials.push_back(monos[m]);
        fit.coeffs.push_back(sol.x[m]);
    }
    // verify the reconstruction on the full requested range
    QSeries<R> recon = series_zero(ring, check_to);
    for (std::size_t m = 0; m < monos.size(); ++m)
        recon = series_add(recon, series_scale(series[m], sol.x[m]));
    for (long long e = 0; e <= check_to; ++e)
        if (!ring.equal(recon.coeff(e), target.coeff(e)))
            throw NotInClassError(
                "quasimodular_fit: candidate determined from the leading coefficients fails "
                "verification at exponent " + std::to_string(e));
    fit.residual_checked_to = check_to;
    return fit;
}

// all coefficients l-integral (denominators coprime to l); Q-coefficients only
inline bool fit_is_ell_integral(const QuasimodularFit<RationalRing>& fit, long ell) {
    for (const auto& c : fit.coeffs)
        if (rat_den(c) % ell == 0) return false;
    return true;
}

}  // namespace quasirank
