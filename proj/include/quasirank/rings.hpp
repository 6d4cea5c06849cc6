// Exact coefficient rings: arbitrary-precision integers, rationals, and
// residue rings Z/m. Each ring is a small value class exposing the same
// operation set, so series and polynomial code can be templated over it:
//
//   using Elem = ...;
//   Elem zero()/one()/from_int(Int)/from_long(long long)
//   add/sub/mul/neg, is_zero, equal
//   try_invert  -> std::optional<Elem> (empty when the element is not a unit)
//   invert_unit -> Elem, throws NonInvertibleError carrying the offending gcd
//   from_rat    -> std::optional<Elem> (embeds p/q when q is a unit)
//   to_string/parse, tag
//
// All elements are immutable values; operations are pure.
#pragma once

#include "quasirank/ints.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace quasirank {

struct NonInvertibleError : std::domain_error {
    Int gcd_with_modulus;
    explicit NonInvertibleError(const std::string& what, Int g = 0)
        : std::domain_error(what), gcd_with_modulus(std::move(g)) {}
};

class IntegerRing {
public:
    using Elem = Int;
    static constexpr bool is_field = false;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(const Int& x) const { return x; }
    Elem from_long(long long x) const { return Int(x); }
    std::optional<Elem> from_rat(const Rat& r) const {
        if (rat_den(r) == 1) return rat_num(r);
        return std::nullopt;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    std::optional<Elem> try_invert(const Elem& a) const {
        if (a == 1 || a == -1) return a;
        return std::nullopt;
    }
    Elem invert_unit(const Elem& a) const {
        auto r = try_invert(a);
        if (!r) throw NonInvertibleError("integer is not a unit", boost::multiprecision::abs(a));
        return *r;
    }

    std::string to_string(const Elem& a) const { return a.str(); }
    Elem parse(const std::string& s) const { return Int(s); }
    std::string tag() const { return "integer"; }
    bool operator==(const IntegerRing&) const { return true; }
};

class RationalRing {
public:
    using Elem = Rat;
    static constexpr bool is_field = true;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(const Int& x) const { return Rat(x); }
    Elem from_long(long long x) const { return Rat(x); }
    std::optional<Elem> from_rat(const Rat& r) const { return r; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    std::optional<Elem> try_invert(const Elem& a) const {
        if (a == 0) return std::nullopt;
        return Rat(1) / a;
    }
    Elem invert_unit(const Elem& a) const {
        auto r = try_invert(a);
        if (!r) throw NonInvertibleError("division by zero in Q");
        return *r;
    }

    std::string to_string(const Elem& a) const { return rat_num(a).str() + "/" + rat_den(a).str(); }
    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    std::string tag() const { return "rational"; }
    bool operator==(const RationalRing&) const { return true; }
};

// Z/m for m >= 2. m need not be prime (l^2 moduli are used); division is
// defined only for units and reports the offending gcd otherwise.
class ResidueRing {
public:
    using Elem = std::uint64_t;
    static constexpr bool is_field = false;  // fieldness is a runtime property, see prime()

    explicit ResidueRing(std::uint64_t modulus = 2) : m_(modulus) {
        if (m_ < 2) throw std::domain_error("residue modulus must be >= 2");
        if (m_ > (1ull << 31)) throw std::domain_error("residue modulus too large");
        prime_ = is_prime(static_cast<long long>(m_));
    }

    std::uint64_t modulus() const { return m_; }
    bool prime() const { return prime_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % m_; }
    Elem from_long(long long x) const {
        long long r = x % static_cast<long long>(m_);
        if (r < 0) r += static_cast<long long>(m_);
        return static_cast<Elem>(r);
    }
    Elem from_int(const Int& x) const {
        Int r = x % Int(m_);
        if (r < 0) r += Int(m_);
        return static_cast<Elem>(r.convert_to<std::uint64_t>());
    }
    std::optional<Elem> from_rat(const Rat& r) const {
        Elem den = from_int(rat_den(r));
        auto inv = try_invert(den);
        if (!inv) return std::nullopt;
        return mul(from_int(rat_num(r)), *inv);
    }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + m_ - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % m_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : m_ - a; }
    bool is_zero(Elem a) const { return a == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }

    std::optional<Elem> try_invert(Elem a) const {
        // extended gcd over signed 128-bit-safe range (m < 2^31)
        long long r0 = static_cast<long long>(m_), r1 = static_cast<long long>(a % m_);
        long long s0 = 0, s1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long r2 = r0 - q * r1;
            long long s2 = s0 - q * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        if (r0 != 1) return std::nullopt;
        long long inv = s0 % static_cast<long long>(m_);
        if (inv < 0) inv += static_cast<long long>(m_);
        return static_cast<Elem>(inv);
    }
    Elem invert_unit(Elem a) const {
        auto r = try_invert(a);
        if (!r) {
            Int g = boost::multiprecision::gcd(Int(a), Int(m_));
            throw NonInvertibleError("element " + std::to_string(a) + " is not a unit of Z/" +
                                         std::to_string(m_),
                                     g);
        }
        return *r;
    }

    Elem pow(Elem a, unsigned long long e) const {
        Elem r = one(), b = a % m_;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const { return from_int(Int(s)); }
    std::string tag() const { return "residue(" + std::to_string(m_) + ")"; }
    bool operator==(const ResidueRing& o) const { return m_ == o.m_; }

private:
    std::uint64_t m_;
    bool prime_;
};

}  // namespace quasirank
