// Exact arithmetic in Z[zeta_N] (and Q(zeta_N), Z/m[zeta_N]) with elements
// kept fully reduced modulo the N-th cyclotomic polynomial Phi_N. Reduction
// modulo Phi_N (not x^N - 1) keeps the zero test canonical: an element is
// zero iff all phi(N) coordinates are zero.
#pragma once

#include "quasirank/ints.hpp"
#include "quasirank/rings.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

namespace quasirank {

// Phi_N as a monic integer polynomial, by iterated exact division of x^N - 1
// by Phi_d over the proper divisors d of N.
inline std::vector<Int> cyclotomic_polynomial(long n) {
    if (n < 1) throw std::domain_error("cyclotomic_polynomial: N must be >= 1");
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    // iterative fill so the recursion never touches the cache reentrantly
    for (long m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        std::vector<Int> poly(m + 1);  // x^m - 1
        poly[0] = -1;
        poly[m] = 1;
        for (long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const std::vector<Int>& phi_d = cache.at(d);
            // exact division by the monic phi_d
            std::vector<Int> quot(poly.size() - phi_d.size() + 1);
            std::vector<Int> rem = poly;
            for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
                Int c = rem[i + phi_d.size() - 1];
                quot[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
            }
            for (const Int& r : rem)
                if (r != 0) throw std::logic_error("cyclotomic division not exact");
            poly = std::move(quot);
        }
        cache[m] = poly;
    }
    return cache.at(n);
}

namespace detail {
// Precomputed reduction data for one conductor, shared immutably by all
// ring handles with that conductor.
struct CycTable {
    long n = 1;
    long phi = 1;
    std::vector<Int> min_poly;            // Phi_N, monic, degree phi
    std::vector<std::vector<Int>> red;    // red[i] = x^{phi+i} mod Phi_N, i = 0..phi-2
};

inline std::shared_ptr<const CycTable> cyc_table(long n) {
    static std::map<long, std::shared_ptr<const CycTable>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto t = std::make_shared<CycTable>();
    t->n = n;
    t->min_poly = cyclotomic_polynomial(n);
    t->phi = static_cast<long>(t->min_poly.size()) - 1;
    // x^phi = -(lower part of Phi); then x^{phi+i+1} = x * x^{phi+i}, re-reduced.
    // Products need rows up to x^{2phi-2}; root_power needs rows up to x^{N-1}.
    long max_i = std::max(t->phi - 2, n - 1 - t->phi);
    if (max_i >= 0) {
        std::vector<Int> cur(t->phi);
        for (long j = 0; j < t->phi; ++j) cur[j] = -t->min_poly[j];
        t->red.push_back(cur);
        for (long i = 1; i <= max_i; ++i) {
            std::vector<Int> next(t->phi);
            Int lead = cur[t->phi - 1];
            for (long j = t->phi - 1; j >= 1; --j) next[j] = cur[j - 1];
            next[0] = 0;
            if (lead != 0)
                for (long j = 0; j < t->phi; ++j) next[j] += lead * t->red[0][j];
            t->red.push_back(next);
            cur = std::move(next);
        }
    }
    cache[n] = t;
    return t;
}
}  // namespace detail

// Ring Base[zeta_N]. Elements are coordinate vectors of length phi(N) in the
// power basis 1, zeta, ..., zeta^{phi-1}, always reduced modulo Phi_N.
template <class Base>
class CyclotomicRing {
public:
    using BaseElem = typename Base::Elem;
    using Elem = std::vector<BaseElem>;
    static constexpr bool is_field = false;

    CyclotomicRing() : CyclotomicRing(1, Base()) {}
    CyclotomicRing(long conductor, Base base)
        : base_(std::move(base)), table_(detail::cyc_table(conductor)) {
        if (conductor < 1) throw std::domain_error("cyclotomic conductor must be >= 1");
    }

    const Base& base() const { return base_; }
    long conductor() const { return table_->n; }
    long degree() const { return table_->phi; }

    Elem zero() const { return Elem(degree(), base_.zero()); }
    Elem one() const {
        Elem e = zero();
        e[0] = base_.one();
        return e;
    }
    Elem from_base(const BaseElem& b) const {
        Elem e = zero();
        e[0] = b;
        return e;
    }
    Elem from_int(const Int& x) const { return from_base(base_.from_int(x)); }
    Elem from_long(long long x) const { return from_base(base_.from_long(x)); }
    std::optional<Elem> from_rat(const Rat& r) const {
        auto b = base_.from_rat(r);
        if (!b) return std::nullopt;
        return from_base(*b);
    }

    // zeta_N^e for any integer e (negative allowed), canonically reduced.
    Elem root_power(long long e) const {
        long long k = pos_mod(e, conductor());
        Elem out = zero();
        if (k < degree()) {
            out[k] = base_.one();
            return out;
        }
        const auto& row = table_->red[k - degree()];
        for (long j = 0; j < degree(); ++j) out[j] = base_.from_int(row[j]);
        return out;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(degree());
        for (long i = 0; i < degree(); ++i) r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(degree());
        for (long i = 0; i < degree(); ++i) r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(degree());
        for (long i = 0; i < degree(); ++i) r[i] = base_.neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        const long phi = degree();
        std::vector<BaseElem> prod(2 * phi - 1, base_.zero());
        for (long i = 0; i < phi; ++i) {
            if (base_.is_zero(a[i])) continue;
            for (long j = 0; j < phi; ++j) {
                if (base_.is_zero(b[j])) continue;
                prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
            }
        }
        Elem r(prod.begin(), prod.begin() + phi);
        for (long k = phi; k < 2 * phi - 1; ++k) {
            if (base_.is_zero(prod[k])) continue;
            const auto& row = table_->red[k - phi];
            for (long j = 0; j < phi; ++j) {
                if (row[j] == 0) continue;
                r[j] = base_.add(r[j], base_.mul(prod[k], base_.from_int(row[j])));
            }
        }
        return r;
    }
    Elem mul_base(const Elem& a, const BaseElem& s) const {
        Elem r(degree());
        for (long i = 0; i < degree(); ++i) r[i] = base_.mul(a[i], s);
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base_.is_zero(c)) return false;
        return true;
    }
    bool equal(const Elem& a, const Elem& b) const {
        for (long i = 0; i < degree(); ++i)
            if (!base_.equal(a[i], b[i])) return false;
        return true;
    }

    // True when the element lies in the base ring (only the constant
    // coordinate may be nonzero).
    bool is_scalar(const Elem& a) const {
        for (long i = 1; i < degree(); ++i)
            if (!base_.is_zero(a[i])) return false;
        return true;
    }
    BaseElem scalar_part(const Elem& a) const { return a[0]; }

    std::optional<Elem> try_invert(const Elem& a) const {
        if (is_zero(a)) return std::nullopt;
        if constexpr (std::is_same_v<Base, IntegerRing>) {
            // invert over Q, keep only if all coordinates stay integral
            CyclotomicRing<RationalRing> qring(conductor(), RationalRing{});
            typename CyclotomicRing<RationalRing>::Elem aq(degree());
            for (long i = 0; i < degree(); ++i) aq[i] = Rat(a[i]);
            auto inv = qring.try_invert(aq);
            if (!inv) return std::nullopt;
            Elem out(degree());
            for (long i = 0; i < degree(); ++i) {
                if (rat_den((*inv)[i]) != 1) return std::nullopt;
                out[i] = rat_num((*inv)[i]);
            }
            return out;
        } else {
            return invert_by_extended_gcd(a);
        }
    }
    Elem invert_unit(const Elem& a) const {
        auto r = try_invert(a);
        if (!r) throw NonInvertibleError("cyclotomic element is not a unit");
        return *r;
    }

    Elem pow(const Elem& a, long long e) const {
        if (e < 0) return pow(invert_unit(a), -e);
        Elem r = one(), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    std::string to_string(const Elem& a) const {
        std::ostringstream os;
        for (long i = 0; i < degree(); ++i) {
            if (i) os << ',';
            os << base_.to_string(a[i]);
        }
        return os.str();
    }
    Elem parse(const std::string& s) const {
        Elem r;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                r.push_back(base_.parse(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        r.push_back(base_.parse(cur));
        if (static_cast<long>(r.size()) != degree())
            throw std::invalid_argument("cyclotomic parse: wrong coordinate count");
        return r;
    }
    std::string tag() const {
        return "cyclotomic(" + std::to_string(conductor()) + "," + base_.tag() + ")";
    }
    bool operator==(const CyclotomicRing& o) const {
        return conductor() == o.conductor() && base_ == o.base_;
    }

private:
    // Extended Euclid on (lifted a, Phi_N) over a base field.
    std::optional<Elem> invert_by_extended_gcd(const Elem& a) const {
        using Poly = std::vector<BaseElem>;
        const long phi = degree();
        auto trim = [&](Poly& p) {
            while (!p.empty() && base_.is_zero(p.back())) p.pop_back();
        };
        Poly r0(phi + 1);
        for (long i = 0; i <= phi; ++i) r0[i] = base_.from_int(table_->min_poly[i]);
        Poly r1(a);
        trim(r1);
        Poly s0{}, s1{base_.one()};
        while (!r1.empty()) {
            // divide r0 by r1
            Poly rem = r0;
            Poly quot(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, base_.zero());
            auto lead_inv = base_.try_invert(r1.back());
            if (!lead_inv) return std::nullopt;  // non-unit leading coeff (non-field base)
            for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
                BaseElem c = base_.mul(rem[i + r1.size() - 1], *lead_inv);
                quot[i] = c;
                if (base_.is_zero(c)) continue;
                for (std::size_t j = 0; j < r1.size(); ++j)
                    rem[i + j] = base_.sub(rem[i + j], base_.mul(c, r1[j]));
            }
            trim(rem);
            // s2 = s0 - quot * s1
            Poly qs(quot.size() + s1.size(), base_.zero());
            for (std::size_t i = 0; i < quot.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = base_.add(qs[i + j], base_.mul(quot[i], s1[j]));
            Poly s2(std::max(s0.size(), qs.size()), base_.zero());
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = base_.sub(s2[i], qs[i]);
            trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1) return std::nullopt;  // gcd not a unit constant
        auto ginv = base_.try_invert(r0[0]);
        if (!ginv) return std::nullopt;
        if (s0.size() > static_cast<std::size_t>(phi))
            throw std::logic_error("cyclotomic inverse: cofactor degree out of range");
        Elem out = zero();
        for (std::size_t i = 0; i < s0.size(); ++i) out[i] = base_.mul(s0[i], *ginv);
        return out;
    }

    Base base_;
    std::shared_ptr<const detail::CycTable> table_;
};

// Embed an element of Base[zeta_M] into Base[zeta_N] for M | N
// (zeta_M = zeta_N^{N/M}); used when one computation mixes root orders.
template <class Base>
typename CyclotomicRing<Base>::Elem embed(const CyclotomicRing<Base>& from,
                                          const CyclotomicRing<Base>& to,
                                          const typename CyclotomicRing<Base>::Elem& a) {
    if (to.conductor() % from.conductor() != 0)
        throw std::domain_error("embed: target conductor must be a multiple");
    long long step = to.conductor() / from.conductor();
    auto out = to.zero();
    for (long i = 0; i < from.degree(); ++i) {
        if (from.base().is_zero(a[i])) continue;
        out = to.add(out, to.mul_base(to.root_power(step * i), a[i]));
    }
    return out;
}

}  // namespace quasirank
