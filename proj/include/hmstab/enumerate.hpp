#pragma once

// Exhaustive point enumeration over small finite fields and their low-degree
// extensions. Counting singular points over F_{p^r} for growing r is what the
// dimension estimator feeds on; enumeration over the base field also supplies
// candidate centers for frame searches. Extensions are represented as
// F_p[t]/(h) with h a deterministic irreducible of degree r <= 3, so only
// ring operations are ever needed: projective points are enumerated with the
// first nonzero coordinate already normalized to 1.

#include <array>
#include <cstdint>
#include <functional>

#include "hmstab/poly.hpp"

namespace hmstab {

class GFExt {
public:
    // Coefficients of 1, t, t^2; entries beyond the degree stay zero.
    using Elt = std::array<long long, 3>;

    GFExt(std::uint32_t p, int r) : p_(p), r_(r) {
        if (!is_prime_u32(p)) throw DomainError("extension base must be prime");
        if (r < 1 || r > 3) throw DomainError("extension degree must be 1, 2, or 3");
        mod_tail_ = {0, 0, 0};
        if (r_ > 1) find_irreducible();
    }

    std::uint32_t p() const { return p_; }
    int r() const { return r_; }
    std::uint64_t size() const {
        std::uint64_t s = 1;
        for (int i = 0; i < r_; ++i) s *= p_;
        return s;
    }

    Elt zero() const { return {0, 0, 0}; }
    Elt one() const { return {1 % p_, 0, 0}; }
    Elt from_residue(long long v) const {
        long long m = v % p_;
        if (m < 0) m += p_;
        return {m, 0, 0};
    }
    // index < size(): base-p digits become coefficients, so index 0 is zero
    // and indices below p are the prime-field residues.
    Elt element(std::uint64_t index) const {
        Elt e = {0, 0, 0};
        for (int i = 0; i < r_; ++i) {
            e[static_cast<size_t>(i)] = static_cast<long long>(index % p_);
            index /= p_;
        }
        return e;
    }

    bool is_zero(const Elt& a) const {
        for (int i = 0; i < r_; ++i)
            if (a[static_cast<size_t>(i)] != 0) return false;
        return true;
    }
    bool equal(const Elt& a, const Elt& b) const {
        for (int i = 0; i < r_; ++i)
            if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) return false;
        return true;
    }

    Elt add(const Elt& a, const Elt& b) const {
        Elt c = {0, 0, 0};
        for (int i = 0; i < r_; ++i)
            c[static_cast<size_t>(i)] =
                (a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)]) % p_;
        return c;
    }

    Elt mul(const Elt& a, const Elt& b) const {
        const long long p = p_;
        if (r_ == 1) return {(a[0] * b[0]) % p, 0, 0};
        if (r_ == 2) {
            // t^2 = -(m0 + m1 t)
            const long long c0 = a[0] * b[0] % p;
            const long long c1 = (a[0] * b[1] + a[1] * b[0]) % p;
            const long long c2 = a[1] * b[1] % p;
            long long r0 = (c0 - c2 * mod_tail_[0]) % p;
            long long r1 = (c1 - c2 * mod_tail_[1]) % p;
            if (r0 < 0) r0 += p;
            if (r1 < 0) r1 += p;
            return {r0, r1, 0};
        }
        // r = 3: t^3 = -(m0 + m1 t + m2 t^2), applied from the top down
        const long long c0 = a[0] * b[0] % p;
        const long long c1 = (a[0] * b[1] + a[1] * b[0]) % p;
        const long long c2 = (a[0] * b[2] + a[1] * b[1] + a[2] * b[0]) % p;
        const long long c3 = (a[1] * b[2] + a[2] * b[1]) % p;
        const long long c4 = a[2] * b[2] % p;
        const long long d1 = (c1 - c4 * mod_tail_[0]) % p;
        const long long d2 = (c2 - c4 * mod_tail_[1]) % p;
        const long long d3 = (c3 - c4 * mod_tail_[2]) % p;
        long long r0 = (c0 - d3 * mod_tail_[0]) % p;
        long long r1 = (d1 - d3 * mod_tail_[1]) % p;
        long long r2 = (d2 - d3 * mod_tail_[2]) % p;
        if (r0 < 0) r0 += p;
        if (r1 < 0) r1 += p;
        if (r2 < 0) r2 += p;
        return {r0, r1, r2};
    }

    Elt pow(Elt base, long e) const {
        if (e < 0) throw DomainError("extension pow needs a nonnegative exponent");
        Elt acc = one();
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    // First (lexicographically by tail coefficients) monic h of degree r with
    // no root in F_p; for r in {2,3} rootlessness is irreducibility.
    void find_irreducible() {
        std::uint64_t count = 1;
        for (int i = 0; i < r_; ++i) count *= p_;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t rest = idx;
            for (int i = 0; i < r_; ++i) {
                mod_tail_[static_cast<size_t>(i)] = static_cast<long long>(rest % p_);
                rest /= p_;
            }
            bool has_root = false;
            for (std::uint64_t x = 0; x < p_ && !has_root; ++x) {
                long long v = 1; // leading t^r term
                for (int i = r_ - 1; i >= 0; --i)
                    v = (v * static_cast<long long>(x) + mod_tail_[static_cast<size_t>(i)]) % p_;
                has_root = v == 0;
            }
            if (!has_root) return;
        }
        throw InternalError("no irreducible polynomial found"); // cannot happen
    }

    std::uint32_t p_;
    int r_;
    std::array<long long, 3> mod_tail_;
};

inline std::uint64_t projective_point_count(std::uint64_t q, Eigen::Index n_coords) {
    std::uint64_t total = 0, layer = 1;
    for (Eigen::Index i = 0; i < n_coords; ++i) {
        total += layer;
        layer *= q;
    }
    return total; // 1 + q + ... + q^{n-1}
}

// Visit every point of P^{n-1} over the extension once, first nonzero
// coordinate normalized to 1, in a fixed deterministic order. Templated on
// the callback so tight enumeration loops inline it.
template <class Fn>
void for_each_projective_point(const GFExt& gf, Eigen::Index n_coords, Fn&& fn) {
    std::vector<GFExt::Elt> x(static_cast<size_t>(n_coords));
    const std::uint64_t q = gf.size();
    for (Eigen::Index lead = 0; lead < n_coords; ++lead) {
        for (Eigen::Index i = 0; i < lead; ++i) x[static_cast<size_t>(i)] = gf.zero();
        x[static_cast<size_t>(lead)] = gf.one();
        const Eigen::Index free_coords = n_coords - lead - 1;
        std::uint64_t combos = 1;
        for (Eigen::Index i = 0; i < free_coords; ++i) combos *= q;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::uint64_t rest = idx;
            for (Eigen::Index i = 0; i < free_coords; ++i) {
                x[static_cast<size_t>(lead + 1 + i)] = gf.element(rest % q);
                rest /= q;
            }
            fn(x);
        }
    }
}

namespace detail {

inline GFExt::Elt eval_over_ext(const HomogeneousPoly<Fp>& f, const GFExt& gf,
                                const std::vector<GFExt::Elt>& x) {
    GFExt::Elt acc = gf.zero();
    for (const auto& [m, c] : f.terms()) {
        GFExt::Elt v = gf.from_residue(c.value());
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            const int e = m(i);
            if (e == 0) continue;
            const GFExt::Elt& xi = x[static_cast<size_t>(i)];
            if (gf.is_zero(xi)) {
                v = gf.zero();
                break;
            }
            for (int k = 0; k < e; ++k) v = gf.mul(v, xi);
        }
        acc = gf.add(acc, v);
    }
    return acc;
}

} // namespace detail

// Number of points of P^{N} over F_{p^r} where f and all its partial
// derivatives vanish. Throws BudgetError before starting if the enumeration
// would exceed `budget` point evaluations.
inline std::uint64_t count_singular_points(const HomogeneousPoly<Fp>& f, const GFExt& gf,
                                           std::uint64_t budget) {
    if (f.is_zero()) throw DomainError("singular count undefined for the zero polynomial");
    if (static_cast<long>(gf.p()) != f.field_characteristic())
        throw DomainError("extension characteristic does not match the polynomial");
    const Eigen::Index n = f.n_vars();
    if (projective_point_count(gf.size(), n) > budget)
        throw BudgetError("finite field enumeration budget exceeded");
    std::vector<HomogeneousPoly<Fp>> polys;
    polys.push_back(f);
    for (Eigen::Index i = 0; i < n; ++i) polys.push_back(partial_derivative(f, i));
    std::uint64_t count = 0;
    for_each_projective_point(gf, n, [&](const std::vector<GFExt::Elt>& x) {
        for (const auto& g : polys) {
            if (g.is_zero()) continue;
            if (!gf.is_zero(detail::eval_over_ext(g, gf, x))) return;
        }
        ++count;
    });
    return count;
}

// Singular points over the prime field itself, as coordinate vectors (first
// nonzero coordinate 1), in enumeration order.
inline std::vector<VectorX<Fp>> singular_points_fp(const HomogeneousPoly<Fp>& f,
                                                   std::uint64_t budget) {
    if (f.is_zero()) throw DomainError("singular points undefined for the zero polynomial");
    const auto p = static_cast<std::uint32_t>(f.field_characteristic());
    GFExt gf(p, 1);
    const Eigen::Index n = f.n_vars();
    if (projective_point_count(gf.size(), n) > budget)
        throw BudgetError("finite field enumeration budget exceeded");
    std::vector<HomogeneousPoly<Fp>> polys;
    polys.push_back(f);
    for (Eigen::Index i = 0; i < n; ++i) polys.push_back(partial_derivative(f, i));
    std::vector<VectorX<Fp>> out;
    for_each_projective_point(gf, n, [&](const std::vector<GFExt::Elt>& x) {
        for (const auto& g : polys) {
            if (g.is_zero()) continue;
            if (!gf.is_zero(detail::eval_over_ext(g, gf, x))) return;
        }
        VectorX<Fp> pt(n);
        for (Eigen::Index i = 0; i < n; ++i) pt(i) = Fp(x[static_cast<size_t>(i)][0], p);
        out.push_back(std::move(pt));
    });
    return out;
}

// Reduction of a rational form modulo p. A prime is good when every
// coefficient keeps both its meaning and its presence: denominators coprime
// to p and numerators not divisible by p (so the support is unchanged).
inline std::optional<HomogeneousPoly<Fp>> reduce_mod_p(const HomogeneousPoly<Rational>& f,
                                                       std::uint32_t p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (!is_prime_u32(p)) throw DomainError("reduction modulus must be prime");
    HomogeneousPoly<Fp> out(f.n_vars(), f.degree());
    for (const auto& [m, c] : f.terms()) {
        Integer num = Integer(numerator(c));
        Integer den = Integer(denominator(c));
        Integer pp(static_cast<long>(p));
        if (is_zero(Integer(num % pp))) return std::nullopt;
        if (is_zero(Integer(den % pp))) return std::nullopt;
        Fp fn(static_cast<long long>(num % pp), p);
        Fp fd(static_cast<long long>(den % pp), p);
        out.add_term(m, fn / fd);
    }
    return out;
}

} // namespace hmstab
