#pragma once

// Exact coefficient fields: arbitrary-precision rationals (GMP-backed) and
// prime fields F_p with p < 2^31. Both satisfy the informal Field concept used
// throughout: value-semantic, exact +,-,*,/, equality, and a characteristic()
// hook. Eigen dense types work over both scalars.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "hmstab/error.hpp"

namespace hmstab {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline std::string to_string(const Rational& x) { return x.str(); }
inline long characteristic(const Rational&) { return 0; }

// Parses "a", "-a", "a/b" with optional surrounding whitespace. Exact; never
// constructs a zero denominator.
inline Rational parse_rational(std::string_view text) {
    size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string_view body = text.substr(begin, end - begin);
    if (body.empty()) throw ParseError("empty rational literal");
    if (body[0] == '+') body.remove_prefix(1); // GMP rejects an explicit plus
    if (body.empty()) throw ParseError("dangling sign");
    size_t i = 0;
    auto digits = [&](size_t from) {
        size_t j = from;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
        return j;
    };
    if (body[i] == '+' || body[i] == '-') ++i;
    size_t num_end = digits(i);
    if (num_end == i) throw ParseError("expected digits in rational literal '" + std::string(body) + "'");
    if (num_end == body.size()) return Rational(std::string(body));
    if (body[num_end] != '/') throw ParseError("bad rational literal '" + std::string(body) + "'");
    size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != body.size())
        throw ParseError("bad rational literal '" + std::string(body) + "'");
    Rational den(std::string(body.substr(num_end + 1)));
    if (is_zero(den)) throw ParseError("zero denominator in '" + std::string(body) + "'");
    return Rational(std::string(body.substr(0, num_end))) / den;
}

// Residue modulo a prime p < 2^31. A value either carries its modulus (bound)
// or is an integer literal (p == 0) awaiting one; literals appear only through
// generic Scalar(0)/Scalar(1) construction and adopt the modulus of the first
// bound operand they meet. Mixing two distinct moduli is an error.
class Fp {
public:
    Fp() = default;
    Fp(long long literal) : v_(literal) {} // NOLINT: implicit by design (Scalar(0))
    Fp(long long value, std::uint32_t p) : p_(p) {
        if (p == 0) throw DomainError("Fp modulus must be positive");
        long long r = value % static_cast<long long>(p);
        if (r < 0) r += p;
        v_ = r;
    }

    bool bound() const { return p_ != 0; }
    std::uint32_t modulus() const { return p_; }

    // Canonical residue in [0, p); requires a bound modulus.
    std::uint32_t value() const {
        if (!bound()) throw DomainError("Fp literal has no modulus");
        return static_cast<std::uint32_t>(v_);
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint32_t p = merged_modulus(a, b);
        if (!p) return Fp(a.v_ + b.v_);
        return Fp(static_cast<long long>(a.rebind(p)) + b.rebind(p), p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint32_t p = merged_modulus(a, b);
        if (!p) return Fp(a.v_ - b.v_);
        return Fp(static_cast<long long>(a.rebind(p)) - b.rebind(p), p);
    }
    friend Fp operator-(const Fp& a) {
        if (!a.bound()) return Fp(-a.v_);
        return Fp(-static_cast<long long>(a.value()), a.p_);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint32_t p = merged_modulus(a, b);
        if (!p) return Fp(a.v_ * b.v_);
        std::uint64_t prod = static_cast<std::uint64_t>(a.rebind(p)) * b.rebind(p);
        return Fp(static_cast<long long>(prod % p), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) {
        std::uint32_t p = merged_modulus(a, b);
        if (!p) throw DomainError("Fp division requires a bound modulus");
        return a * Fp(b.rebind(p), p).inverse();
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        std::uint32_t p = merged_modulus(a, b);
        if (!p) return a.v_ == b.v_;
        return a.rebind(p) == b.rebind(p);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inverse() const {
        if (!bound()) throw DomainError("Fp inverse requires a bound modulus");
        if (value() == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
        // Extended Euclid on (v, p): returns v^{-1} mod p.
        long long r0 = static_cast<long long>(p_), r1 = value();
        long long t0 = 0, t1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long r2 = r0 - q * r1; r0 = r1; r1 = r2;
            long long t2 = t0 - q * t1; t0 = t1; t1 = t2;
        }
        if (r0 != 1) throw DomainError(std::to_string(p_) + " is not prime");
        return Fp(t0, p_);
    }

    Fp pow(long long e) const {
        if (!bound()) throw DomainError("Fp pow requires a bound modulus");
        Fp base = e < 0 ? inverse() : *this;
        if (e < 0) e = -e;
        Fp acc(1, p_);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

private:
    // Residue with the given modulus imposed; literals reduce on the spot.
    std::uint32_t rebind(std::uint32_t p) const {
        if (bound()) return static_cast<std::uint32_t>(v_);
        long long r = v_ % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    static std::uint32_t merged_modulus(const Fp& a, const Fp& b) {
        if (a.p_ && b.p_ && a.p_ != b.p_)
            throw DomainError("mixed moduli " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
        return a.p_ ? a.p_ : b.p_;
    }

    long long v_{0};
    std::uint32_t p_{0};
};

inline bool is_zero(const Fp& x) {
    return x == Fp(0);
}
inline std::string to_string(const Fp& x) {
    return std::to_string(x.value());
}
inline std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << x.value();
}
inline long characteristic(const Fp& x) { return static_cast<long>(x.modulus()); }

inline bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Construct a scalar carrying the given characteristic: an ordinary rational
// when ch == 0, a residue bound to F_ch otherwise. Generic code fabricating
// constants (identity frames, basis vectors) uses this so finite-field values
// come out bound to their modulus.
template <class K>
K scalar_in(long long v, long ch);

template <>
inline Rational scalar_in<Rational>(long long v, long) {
    return Rational(v);
}

template <>
inline Fp scalar_in<Fp>(long long v, long ch) {
    return ch > 0 ? Fp(v, static_cast<std::uint32_t>(ch)) : Fp(v);
}

} // namespace hmstab

namespace Eigen {
template <>
struct NumTraits<hmstab::Fp> {
    typedef hmstab::Fp Real;
    typedef hmstab::Fp NonInteger;
    typedef hmstab::Fp Literal;
    typedef hmstab::Fp Nested;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline int digits10() { return 9; }
};
} // namespace Eigen
