#pragma once

// Weight-vector computations on supports: the α-degree of a homogeneous
// polynomial under a one-parameter-subgroup weight α (integer, zero-sum), the
// w-weighted multiplicity of a local equation, per-frame lower bounds for the
// α-degree in terms of the multiplicity of the centered point, and the exact
// identity connecting the projective α-degree with the affine weighted
// multiplicity.

#include "hmstab/poly.hpp"

namespace hmstab {

inline bool is_sorted_ascending(const Eigen::VectorXi& a) {
    for (Eigen::Index i = 0; i + 1 < a.size(); ++i)
        if (a(i) > a(i + 1)) return false;
    return true;
}

// One-parameter-subgroup weights must sum to zero and not vanish identically.
inline void require_hm_alpha(const Eigen::VectorXi& alpha) {
    long sum = 0;
    bool nonzero = false;
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        sum += alpha(i);
        if (alpha(i) != 0) nonzero = true;
    }
    if (alpha.size() < 2) throw DomainError("weight vector needs at least two entries");
    if (sum != 0) throw DomainError("weight vector must sum to zero");
    if (!nonzero) throw DomainError("weight vector must not be identically zero");
}

// max over the support of sum_i m_i alpha_i. The field plays no role beyond
// selecting which monomials are present.
template <class K>
long long alpha_degree(const HomogeneousPoly<K>& f, const Eigen::VectorXi& alpha) {
    if (f.is_zero()) throw DomainError("alpha-degree of the zero polynomial is undefined");
    if (alpha.size() != f.n_vars()) throw DomainError("weight vector length mismatch");
    bool first = true;
    long long best = 0;
    for (const auto& [m, c] : f.terms()) {
        long long v = 0;
        for (Eigen::Index i = 0; i < m.size(); ++i)
            v += static_cast<long long>(m(i)) * alpha(i);
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

// min over the support of sum_i m_i w_i for nonnegative rational weights.
template <class K>
Rational weighted_multiplicity(const AffinePoly<K>& f, const VectorXq& w) {
    if (f.is_zero()) throw DomainError("weighted multiplicity of the zero polynomial is undefined");
    if (w.size() != f.n_vars()) throw DomainError("weight vector length mismatch");
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) < 0) throw DomainError("weights must be nonnegative");
    bool first = true;
    Rational best(0);
    for (const auto& [m, c] : f.terms()) {
        Rational v(0);
        for (Eigen::Index i = 0; i < m.size(); ++i) v += Rational(m(i)) * w(i);
        if (first || v < best) { best = v; first = false; }
    }
    return best;
}

template <class K>
long long weighted_multiplicity(const AffinePoly<K>& f, const Eigen::VectorXi& w) {
    VectorXq wq(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) wq(i) = Rational(w(i));
    Rational r = weighted_multiplicity(f, wq);
    return static_cast<long long>(boost::multiprecision::numerator(r));
}

// Lower bounds for deg_alpha(F o g) when g centers a point P of multiplicity
// delta at [0:...:0:1], for sorted alpha. Which bound applies depends on
// hypotheses about P established elsewhere:
//   point_off_hypersurface      P not on H
//   point_multiplicity          P on H with multiplicity delta
//   cone_support_not_hyperplane the tangent cone's support is not a hyperplane
//   cone_not_cone               the tangent cone is not a cone over a
//                               hypersurface inside a hyperplane
// The last two require the ambient dimension N >= 2 and are absent otherwise.
struct FrameLowerBounds {
    long long point_off_hypersurface{0};
    long long point_multiplicity{0};
    std::optional<long long> cone_support_not_hyperplane;
    std::optional<long long> cone_not_cone;
};

inline FrameLowerBounds frame_lower_bounds(const Eigen::VectorXi& alpha, long d, long delta) {
    require_hm_alpha(alpha);
    if (!is_sorted_ascending(alpha))
        throw DomainError("frame lower bounds require sorted weights (ascending)");
    if (d < 1) throw DomainError("degree must be positive");
    if (delta < 0) throw DomainError("multiplicity must be nonnegative");
    const Eigen::Index n = alpha.size();
    const int N = static_cast<int>(n) - 1;
    const long long aN = alpha(n - 1);
    FrameLowerBounds b;
    b.point_off_hypersurface = static_cast<long long>(d) * aN;
    long long mid_sum = 0; // alpha_1 + ... + alpha_{N-1}
    for (Eigen::Index i = 1; i < n - 1; ++i) mid_sum += alpha(i);
    b.point_multiplicity = (static_cast<long long>(d) - 2 * delta) * aN - delta * mid_sum;
    if (N >= 2) {
        long long sum_2_to_Nm1 = 0; // alpha_2 + ... + alpha_{N-1}
        for (Eigen::Index i = 2; i < n - 1; ++i) sum_2_to_Nm1 += alpha(i);
        long long sum_1_to_Nm2 = 0; // alpha_1 + ... + alpha_{N-2}
        for (Eigen::Index i = 1; i < n - 2; ++i) sum_1_to_Nm2 += alpha(i);
        const long long head = (static_cast<long long>(d) - 2 * delta + 1) * aN;
        b.cone_support_not_hyperplane =
            head - (delta - 2) * alpha(1) - (delta - 1) * sum_2_to_Nm1;
        b.cone_not_cone = head - (delta - 1) * sum_1_to_Nm2 - (delta - 2) * alpha(n - 2);
    }
    return b;
}

// Affine weights induced by sorted alpha: w_i = alpha_N - alpha_i for i < N.
// Nonnegative precisely because alpha_N is maximal.
inline VectorXq weights_from_alpha(const Eigen::VectorXi& alpha) {
    const Eigen::Index n = alpha.size();
    VectorXq w(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) w(i) = Rational(alpha(n - 1) - alpha(i));
    return w;
}

// Exact identity: for sorted zero-sum alpha and w = weights_from_alpha(alpha),
//   deg_alpha(F o g) = (d / (N+1)) * sum_i w_i - mult_w(dehom(F o g, X_N)).
// Returns both sides, computed independently, as exact rationals.
template <class K>
std::pair<Rational, Rational> degree_multiplicity_bridge(const HomogeneousPoly<K>& f,
                                                         const LinearChange<K>& g,
                                                         const Eigen::VectorXi& alpha) {
    require_hm_alpha(alpha);
    if (!is_sorted_ascending(alpha)) throw DomainError("bridge requires sorted weights");
    if (f.is_zero()) throw DomainError("bridge undefined for the zero polynomial");
    auto fg = apply_linear_change(f, g);
    Rational lhs(alpha_degree(fg, alpha));
    VectorXq w = weights_from_alpha(alpha);
    Rational wsum(0);
    for (Eigen::Index i = 0; i < w.size(); ++i) wsum += w(i);
    auto local = dehomogenize(fg, f.n_vars() - 1);
    Rational rhs = Rational(f.degree()) / Rational(f.n_vars()) * wsum -
                   weighted_multiplicity(local, w);
    return {lhs, rhs};
}

} // namespace hmstab
