#pragma once

// Tail-decomposition certificates linking small weighted degrees to large
// singular loci. For a sorted zero-sum weight vector and a split (u, v) of
// the coordinates, a strict degree inequality forces every high-index tail
// polynomial to be divisible by a low-index variable; the subscheme Z cut out
// by the first v coordinates and the first u tail polynomials then sits
// inside the singular locus, giving a dimension lower bound. The two derived
// bound checks run the contrapositive for a known singular dimension.

#include "hmstab/enumerate.hpp"
#include "hmstab/weights.hpp"

namespace hmstab {

// Equations are recorded against the transformed polynomial f∘g, i.e. in the
// coordinates where the cut-out subspace is {X_0 = ... = X_{v-1} = 0}.
template <class K>
struct ZScheme {
    std::vector<HomogeneousPoly<K>> linear_eqs; // X_0, ..., X_{v-1}
    std::vector<HomogeneousPoly<K>> poly_eqs;   // tail polynomials P_0, ..., P_{u-1}
    Eigen::VectorXi alpha;
    int u{0};
    int v{0};
    int s{0}; // u + v + s = N, recorded after the u <= v normalization
};

namespace detail {

template <class K>
void require_sorted_weights(const HomogeneousPoly<K>& f, const Eigen::VectorXi& alpha) {
    if (f.is_zero()) throw DomainError("weighted degree undefined for the zero polynomial");
    if (alpha.size() != f.n_vars()) throw DomainError("weight vector length mismatch");
    require_hm_alpha(alpha);
    if (!is_sorted_ascending(alpha))
        throw DomainError("weight vector must be sorted ascending");
}

template <class K>
void require_split(const HomogeneousPoly<K>& f, const Eigen::VectorXi& alpha, int u, int v) {
    require_sorted_weights(f, alpha);
    if (u < 0 || v < 0 || u + v > static_cast<int>(alpha.size()) - 1)
        throw DomainError("coordinate split (u, v) out of range");
}

} // namespace detail

// The strict inequality deg_alpha(f∘g) < alpha_u + (d-1) alpha_v. When it
// holds, dim(sing(f∘g) ∩ {X_0 = ... = X_{v-1} = 0}) >= N - u - v.
template <class K>
bool split_degree_hypothesis(const HomogeneousPoly<K>& f, const LinearChange<K>& g,
                             const Eigen::VectorXi& alpha, int u, int v) {
    detail::require_split(f, alpha, u, v);
    const long long deg = alpha_degree(apply_linear_change(f, g), alpha);
    const long long rhs = static_cast<long long>(alpha(u)) +
                          static_cast<long long>(f.degree() - 1) * alpha(v);
    return deg < rhs;
}

// Raw divisibility fact behind the hypothesis: in the tail decomposition of
// f∘g, every monomial of every P_i with i >= u is divisible by some X_j with
// j < v. Guaranteed true when the hypothesis holds; may legitimately be
// false otherwise (and is vacuously false for v = 0 unless those tails all
// vanish).
template <class K>
bool tail_divisibility_check(const HomogeneousPoly<K>& f, const LinearChange<K>& g,
                             const Eigen::VectorXi& alpha, int u, int v) {
    detail::require_split(f, alpha, u, v);
    auto tails = tail_decomposition(apply_linear_change(f, g));
    for (size_t i = static_cast<size_t>(u); i < tails.size(); ++i) {
        for (const auto& [m, c] : tails[i].terms()) {
            bool divisible = false;
            for (int j = 0; j < v; ++j) divisible |= m(j) > 0;
            if (!divisible) return false;
        }
    }
    return true;
}

// The subscheme cut out by the first v coordinates and the first u tail
// polynomials of f∘g. The containment argument needs u <= v, and the
// hypothesis inequality survives swapping an out-of-order pair, so u > v is
// normalized to (v, u) here.
template <class K>
ZScheme<K> build_z_scheme(const HomogeneousPoly<K>& f, const LinearChange<K>& g,
                          const Eigen::VectorXi& alpha, int u, int v) {
    detail::require_split(f, alpha, u, v);
    if (u > v) std::swap(u, v);
    ZScheme<K> z;
    z.alpha = alpha;
    z.u = u;
    z.v = v;
    z.s = static_cast<int>(alpha.size()) - 1 - u - v;
    const Eigen::Index n = f.n_vars();
    const long ch = f.field_characteristic();
    for (int j = 0; j < v; ++j) {
        HomogeneousPoly<K> lin(n, 1);
        Monomial m = Monomial::Zero(n);
        m(j) = 1;
        lin.add_term(m, scalar_in<K>(1, ch));
        z.linear_eqs.push_back(std::move(lin));
    }
    auto tails = tail_decomposition(apply_linear_change(f, g));
    for (int i = 0; i < u; ++i) z.poly_eqs.push_back(std::move(tails[static_cast<size_t>(i)]));
    return z;
}

// Points of P^{n-1} over the extension where every listed equation vanishes.
// Zero equations impose nothing; an empty list counts the whole space.
inline std::uint64_t count_common_zeros(const std::vector<HomogeneousPoly<Fp>>& eqs,
                                        Eigen::Index n_coords, const GFExt& gf,
                                        std::uint64_t budget) {
    if (projective_point_count(gf.size(), n_coords) > budget)
        throw BudgetError("finite field enumeration budget exceeded");
    for (const auto& e : eqs) {
        if (e.is_zero()) continue;
        if (e.n_vars() != n_coords) throw DomainError("equation arity mismatch");
        if (static_cast<long>(gf.p()) != e.field_characteristic())
            throw DomainError("extension characteristic does not match the equations");
    }
    std::uint64_t count = 0;
    for_each_projective_point(gf, n_coords, [&](const std::vector<GFExt::Elt>& x) {
        for (const auto& e : eqs) {
            if (e.is_zero()) continue;
            if (!gf.is_zero(detail::eval_over_ext(e, gf, x))) return;
        }
        ++count;
    });
    return count;
}

namespace detail {

inline bool z_points_all_singular(const HomogeneousPoly<Fp>& ft,
                                  const std::vector<HomogeneousPoly<Fp>>& zeqs,
                                  std::uint64_t budget) {
    const auto p = static_cast<std::uint32_t>(ft.field_characteristic());
    GFExt gf(p, 1);
    const Eigen::Index n = ft.n_vars();
    if (projective_point_count(gf.size(), n) > budget)
        throw BudgetError("finite field enumeration budget exceeded");
    std::vector<HomogeneousPoly<Fp>> sing;
    sing.push_back(ft);
    for (Eigen::Index i = 0; i < n; ++i) sing.push_back(partial_derivative(ft, i));
    bool contained = true;
    for_each_projective_point(gf, n, [&](const std::vector<GFExt::Elt>& x) {
        if (!contained) return;
        for (const auto& e : zeqs) {
            if (e.is_zero()) continue;
            if (!gf.is_zero(eval_over_ext(e, gf, x))) return; // not on Z
        }
        for (const auto& e : sing) {
            if (e.is_zero()) continue;
            if (!gf.is_zero(eval_over_ext(e, gf, x))) {
                contained = false;
                return;
            }
        }
    });
    return contained;
}

} // namespace detail

// Does every F_p-point of Z lie in the singular locus of f∘g? A theorem
// check when the hypothesis held for the split that built Z; still runnable
// (and possibly false) otherwise. Empty Z is vacuously contained.
inline bool verify_z_in_singular_locus(const HomogeneousPoly<Fp>& f, const LinearChange<Fp>& g,
                                       const ZScheme<Fp>& z, std::uint64_t budget) {
    auto ft = apply_linear_change(f, g);
    std::vector<HomogeneousPoly<Fp>> zeqs;
    for (const auto& e : z.linear_eqs) zeqs.push_back(e);
    for (const auto& e : z.poly_eqs) zeqs.push_back(e);
    return detail::z_points_all_singular(ft, zeqs, budget);
}

inline bool verify_z_in_singular_locus(const HomogeneousPoly<Rational>& f,
                                       const LinearChange<Rational>& g,
                                       const ZScheme<Rational>& z, std::uint32_t p,
                                       std::uint64_t budget) {
    auto ftp = reduce_mod_p(apply_linear_change(f, g), p);
    if (!ftp) throw DomainError("prime of bad reduction for the transformed polynomial");
    std::vector<HomogeneousPoly<Fp>> zeqs;
    auto push = [&](const HomogeneousPoly<Rational>& e) {
        if (e.is_zero()) return;
        auto r = reduce_mod_p(e, p);
        if (!r) throw DomainError("prime of bad reduction for an equation of Z");
        zeqs.push_back(std::move(*r));
    };
    for (const auto& e : z.linear_eqs) push(e);
    for (const auto& e : z.poly_eqs) push(e);
    return detail::z_points_all_singular(*ftp, zeqs, budget);
}

// For s the exact dimension of the singular locus: every split u + v =
// N - s - 1 must satisfy deg_alpha(f∘g) >= alpha_u + (d-1) alpha_v, because
// the strict inequality would force the singular dimension above s.
template <class K>
bool split_degree_bound_check(const HomogeneousPoly<K>& f, const LinearChange<K>& g,
                              const Eigen::VectorXi& alpha, int s) {
    detail::require_sorted_weights(f, alpha);
    const int n = static_cast<int>(alpha.size()) - 1;
    if (s < -1 || s > n - 1) throw DomainError("singular dimension out of range");
    const long long deg = alpha_degree(apply_linear_change(f, g), alpha);
    const long long dm1 = f.degree() - 1;
    for (int u = 0; u <= n - s - 1; ++u) {
        const int v = n - s - 1 - u;
        if (deg < static_cast<long long>(alpha(u)) + dm1 * alpha(v)) return false;
    }
    return true;
}

// Averaged form of the split bounds, summed over the interior splits:
// ((N-s-2)/d) deg_alpha(f∘g) >= alpha_1 + ... + alpha_{N-s-2}. Needs
// s <= N-2; exact rational arithmetic throughout.
template <class K>
bool averaged_degree_bound_check(const HomogeneousPoly<K>& f, const LinearChange<K>& g,
                                 const Eigen::VectorXi& alpha, int s) {
    detail::require_sorted_weights(f, alpha);
    const int n = static_cast<int>(alpha.size()) - 1;
    if (s < -1) throw DomainError("singular dimension out of range");
    if (s > n - 2) throw DomainError("averaged degree bound needs s <= N-2");
    const long long deg = alpha_degree(apply_linear_change(f, g), alpha);
    Rational lhs = Rational(n - s - 2) * Rational(deg) / Rational(f.degree());
    Rational rhs(0);
    for (int i = 1; i <= n - s - 2; ++i) rhs += Rational(alpha(i));
    return lhs >= rhs;
}

} // namespace hmstab
