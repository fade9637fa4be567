#pragma once

// Text grammar for polynomials and projective points, plus the canonical
// printer. Grammar: terms joined by '+'/'-'; each term is
// [coeff][*]X<i>[^<e>][*X<j>[^<e>]...] with coeff an integer or a/b; variables
// are X0..XN (case-insensitive on input); whitespace is insignificant. The
// printer emits terms in decreasing graded-lex order with explicit signs and
// round-trips through the parser.

#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hmstab/poly.hpp"

namespace hmstab {

namespace detail {

struct PolyLexer {
    std::string_view text;
    size_t pos{0};

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    std::string digits() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected digits at position " + std::to_string(start));
        return std::string(text.substr(start, pos - start));
    }
    long small_int(const char* what, long cap) {
        std::string d = digits();
        if (d.size() > 7) throw ParseError(std::string(what) + " too large");
        long v = std::stol(d);
        if (v > cap) throw ParseError(std::string(what) + " too large");
        return v;
    }
};

// One parsed term: signed coefficient digits and exponent vector.
template <class K>
struct RawTerm {
    Monomial m;
    K c;
};

// coeff_of(numerator_digits, denominator_digits_or_empty, negative)
template <class K>
using CoeffBuilder = std::function<K(const std::string&, const std::string&, bool)>;

template <class K>
std::vector<RawTerm<K>> parse_terms(std::string_view text, int n_vars, const CoeffBuilder<K>& coeff_of) {
    if (n_vars < 1) throw DomainError("n_vars must be positive");
    PolyLexer lx{text};
    std::vector<RawTerm<K>> terms;
    if (lx.done()) throw ParseError("empty polynomial text");
    bool first = true;
    while (!lx.done()) {
        bool neg = false;
        if (lx.accept('-')) neg = true;
        else if (lx.accept('+')) {
            if (first && lx.peek() == '\0') throw ParseError("dangling sign");
        } else if (!first) {
            throw ParseError("expected '+' or '-' before term at position " + std::to_string(lx.pos));
        }
        first = false;

        std::string num, den;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            num = lx.digits();
            have_coeff = true;
            if (lx.accept('/')) den = lx.digits();
        }
        Monomial m = Monomial::Zero(n_vars);
        bool have_var = false;
        bool expect_star = false;
        // '*' between the coefficient and the variables is optional, but once
        // written it must be followed by a variable.
        bool star_after_coeff = have_coeff && lx.accept('*');
        while (true) {
            char c = lx.peek();
            if (expect_star) {
                if (c != '*') break;
                lx.accept('*');
                c = lx.peek();
            }
            if (c != 'X' && c != 'x') {
                if (expect_star) throw ParseError("expected variable after '*'");
                break;
            }
            ++lx.pos;
            long idx = lx.small_int("variable index", 1000000);
            if (idx >= n_vars)
                throw ParseError("variable X" + std::to_string(idx) + " out of range for n_vars=" +
                                 std::to_string(n_vars));
            long e = 1;
            if (lx.accept('^')) e = lx.small_int("exponent", 1000000);
            m(static_cast<Eigen::Index>(idx)) += static_cast<int>(e);
            have_var = true;
            expect_star = true;
        }
        if (!have_coeff && !have_var)
            throw ParseError("expected term at position " + std::to_string(lx.pos));
        if (star_after_coeff && !have_var) throw ParseError("expected variable after '*'");
        K c = coeff_of(have_coeff ? num : std::string("1"), den, neg);
        terms.push_back(RawTerm<K>{m, c});
    }
    return terms;
}

template <class K>
HomogeneousPoly<K> assemble_homogeneous(const std::vector<RawTerm<K>>& raw, int n_vars) {
    long d = total_degree(raw.front().m);
    for (const auto& t : raw) {
        long dt = total_degree(t.m);
        if (dt != d)
            throw ParseError("mixed degrees " + std::to_string(d) + " and " + std::to_string(dt));
    }
    HomogeneousPoly<K> f(n_vars, d);
    for (const auto& t : raw) f.add_term(t.m, t.c);
    return f;
}

} // namespace detail

inline HomogeneousPoly<Rational> parse_poly_q(std::string_view text, int n_vars) {
    auto cb = [](const std::string& num, const std::string& den, bool neg) {
        Rational c(num);
        if (!den.empty()) {
            Rational q(den);
            if (is_zero(q)) throw ParseError("zero denominator");
            c /= q;
        }
        return neg ? Rational(-c) : c;
    };
    return detail::assemble_homogeneous<Rational>(
        detail::parse_terms<Rational>(text, n_vars, cb), n_vars);
}

inline HomogeneousPoly<Fp> parse_poly_fp(std::string_view text, int n_vars, std::uint32_t p) {
    if (!is_prime_u32(p)) throw DomainError(std::to_string(p) + " is not prime");
    auto mod_digits = [p](const std::string& ds) {
        std::uint64_t v = 0;
        for (char ch : ds) v = (v * 10 + static_cast<std::uint64_t>(ch - '0')) % p;
        return Fp(static_cast<long long>(v), p);
    };
    auto cb = [&](const std::string& num, const std::string& den, bool neg) {
        Fp c = mod_digits(num);
        if (!den.empty()) {
            Fp q = mod_digits(den);
            if (is_zero(q)) throw ParseError("coefficient denominator vanishes mod " + std::to_string(p));
            c /= q;
        }
        return neg ? Fp(-c) : c;
    };
    return detail::assemble_homogeneous<Fp>(detail::parse_terms<Fp>(text, n_vars, cb), n_vars);
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string monomial_string(const Monomial& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        if (m(i) == 0) continue;
        if (!s.empty()) s += "*";
        s += "X" + std::to_string(i);
        if (m(i) > 1) s += "^" + std::to_string(m(i));
    }
    return s;
}

// Sign-magnitude split differs per field: rationals carry signs, residues
// mod p are printed as canonical nonnegative representatives.
inline bool coeff_negative(const Rational& c) { return c < 0; }
inline std::string coeff_magnitude(const Rational& c) { return to_string(c < 0 ? Rational(-c) : c); }
inline bool coeff_is_one(const Rational& c) { return c == 1 || c == -1; }
inline bool coeff_negative(const Fp&) { return false; }
inline std::string coeff_magnitude(const Fp& c) { return to_string(c); }
inline bool coeff_is_one(const Fp& c) { return c == Fp(1); }

template <class K>
std::string terms_to_string(const TermMap<K>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = coeff_negative(c);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono = monomial_string(m);
        if (mono.empty()) {
            out += coeff_magnitude(c);
        } else if (coeff_is_one(c)) {
            out += mono;
        } else {
            out += coeff_magnitude(c) + "*" + mono;
        }
    }
    return out;
}

} // namespace detail

template <class K>
std::string to_string(const HomogeneousPoly<K>& f) {
    return detail::terms_to_string(f.terms());
}

template <class K>
std::string to_string(const AffinePoly<K>& f) {
    return detail::terms_to_string(f.terms());
}

// ---------------------------------------------------------------------------
// Projective points: "[a0:a1:...:aN]"
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<std::string> split_point_body(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e - b < 2 || text[b] != '[' || text[e - 1] != ']')
        throw ParseError("point must look like [a0:a1:...:aN]");
    std::vector<std::string> parts;
    std::string cur;
    for (size_t i = b + 1; i + 1 < e; ++i) {
        if (text[i] == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += text[i];
        }
    }
    parts.push_back(cur);
    return parts;
}
} // namespace detail

inline VectorX<Rational> parse_point_q(std::string_view text, int n_vars) {
    auto parts = detail::split_point_body(text);
    if (static_cast<int>(parts.size()) != n_vars)
        throw ParseError("point has " + std::to_string(parts.size()) + " coordinates, expected " +
                         std::to_string(n_vars));
    VectorX<Rational> x(n_vars);
    bool all_zero = true;
    for (int i = 0; i < n_vars; ++i) {
        x(i) = parse_rational(parts[static_cast<size_t>(i)]);
        if (!is_zero(x(i))) all_zero = false;
    }
    if (all_zero) throw ParseError("projective point cannot be all zeros");
    return x;
}

inline VectorX<Fp> parse_point_fp(std::string_view text, int n_vars, std::uint32_t p) {
    auto parts = detail::split_point_body(text);
    if (static_cast<int>(parts.size()) != n_vars)
        throw ParseError("point has " + std::to_string(parts.size()) + " coordinates, expected " +
                         std::to_string(n_vars));
    VectorX<Fp> x(n_vars);
    bool all_zero = true;
    for (int i = 0; i < n_vars; ++i) {
        Rational r = parse_rational(parts[static_cast<size_t>(i)]);
        Integer num = boost::multiprecision::numerator(r);
        Integer den = boost::multiprecision::denominator(r);
        Fp fden(static_cast<long long>(den % p), p);
        if (is_zero(fden)) throw ParseError("coordinate denominator vanishes mod " + std::to_string(p));
        x(i) = Fp(static_cast<long long>(num % p), p) / fden;
        if (!is_zero(x(i))) all_zero = false;
    }
    if (all_zero) throw ParseError("projective point cannot be all zeros mod " + std::to_string(p));
    return x;
}

template <class K>
std::string point_to_string(const VectorX<K>& x) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i) s += ":";
        s += to_string(x(i));
    }
    return s + "]";
}

} // namespace hmstab
