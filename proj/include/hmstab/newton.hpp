#pragma once

// Per-frame analysis of a hypersurface through its Newton polytope. With the
// coordinate frame fixed, only diagonal one-parameter subgroups remain, and
// (semi)stability against them is a statement about the position of the
// barycenter of the degree-d simplex relative to the convex hull of the
// support. Everything here is exact linear programming over the rationals, so
// verdicts come with integer witness weights that can be re-checked by direct
// evaluation.

#include <cstdint>
#include <random>

#include "hmstab/linear_change.hpp"
#include "hmstab/simplex.hpp"
#include "hmstab/weights.hpp"

namespace hmstab {

enum class FrameClass { Stable, StrictlySemistable, Unstable };

inline const char* to_string(FrameClass c) {
    switch (c) {
        case FrameClass::Stable: return "stable-in-frame";
        case FrameClass::StrictlySemistable: return "strictly-semistable-in-frame";
        case FrameClass::Unstable: return "unstable-in-frame";
    }
    return "";
}

// Verdict for one frame. alpha is an integer zero-sum witness: alpha-degree
// zero for StrictlySemistable, negative for Unstable, absent for Stable.
struct FrameAnalysis {
    FrameClass verdict{FrameClass::Stable};
    std::optional<Eigen::VectorXi> alpha;
};

namespace detail {

// Support points as columns of an integer matrix.
template <class K>
Eigen::MatrixXi support_matrix(const HomogeneousPoly<K>& f) {
    auto supp = f.support();
    Eigen::MatrixXi s(f.n_vars(), static_cast<Eigen::Index>(supp.size()));
    for (size_t j = 0; j < supp.size(); ++j) s.col(static_cast<Eigen::Index>(j)) = supp[j];
    return s;
}

inline void check_frame_witness(const Eigen::MatrixXi& supp, const Eigen::VectorXi& alpha,
                                bool want_zero) {
    require_hm_alpha(alpha);
    long long best = 0;
    for (Eigen::Index j = 0; j < supp.cols(); ++j) {
        long long v = 0;
        for (Eigen::Index i = 0; i < supp.rows(); ++i)
            v += static_cast<long long>(supp(i, j)) * alpha(i);
        if (j == 0 || v > best) best = v;
    }
    if (want_zero ? best != 0 : best >= 0)
        throw InternalError("frame witness failed re-verification");
}

} // namespace detail

// Decide, for the given coordinate frame (i.e. for f as written), whether
// every nonzero zero-sum integer weight alpha gives positive alpha-degree
// (Stable), whether the infimum is exactly zero (StrictlySemistable), or
// whether some alpha gives negative degree (Unstable).
template <class K>
FrameAnalysis torus_verdict(const HomogeneousPoly<K>& f) {
    if (f.is_zero()) throw DomainError("torus verdict undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    const long d = f.degree();
    Eigen::MatrixXi supp = detail::support_matrix(f);
    const Eigen::Index cols = supp.cols();
    const Rational bary = Rational(d) / Rational(static_cast<long>(n));

    // Membership: is the barycenter a convex combination of the support?
    MatrixXq a1(n + 1, cols);
    VectorXq b1(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) a1(i, j) = Rational(supp(i, j));
        b1(i) = bary;
    }
    for (Eigen::Index j = 0; j < cols; ++j) a1(n, j) = Rational(1);
    b1(n) = Rational(1);
    std::vector<Rel> eq(static_cast<size_t>(n) + 1, Rel::EQ);
    auto r1 = solve_lp(a1, b1, VectorXq::Zero(cols), eq);
    if (r1.status == LpStatus::Unbounded)
        throw InternalError("membership program cannot be unbounded");

    FrameAnalysis out;
    if (r1.status == LpStatus::Infeasible) {
        // Farkas multipliers y: y.m + y_n <= 0 on the support, y.b + y_n > 0.
        // Centering the coordinate part of y to sum zero subtracts the same
        // positive quantity from every product, leaving all of them negative.
        VectorXq raw(n);
        Rational mean(0);
        for (Eigen::Index i = 0; i < n; ++i) mean += r1.y(i);
        mean /= Rational(static_cast<long>(n));
        for (Eigen::Index i = 0; i < n; ++i) raw(i) = r1.y(i) - mean;
        out.verdict = FrameClass::Unstable;
        out.alpha = scale_to_coprime_integers(raw);
        detail::check_frame_witness(supp, *out.alpha, false);
        return out;
    }

    // Affine-span test: weights constant on the support and summing to zero
    // are exactly the kernel of the differences stacked with the all-ones row.
    MatrixXq span(cols - 1 + 1, n);
    for (Eigen::Index j = 1; j < cols; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            span(j - 1, i) = Rational(supp(i, j) - supp(i, 0));
    for (Eigen::Index i = 0; i < n; ++i) span(cols - 1, i) = Rational(1);
    MatrixXq ker = kernel_basis<Rational>(span);
    if (ker.cols() > 0) {
        out.verdict = FrameClass::StrictlySemistable;
        out.alpha = scale_to_coprime_integers(VectorXq(ker.col(0)));
        detail::check_frame_witness(supp, *out.alpha, true);
        return out;
    }

    // Interior test: the barycenter is in the relative interior of the hull
    // exactly when it is a convex combination with every coefficient >= eps
    // for some eps > 0.
    MatrixXq a2(n + 1, cols + 1);
    a2.block(0, 0, n + 1, cols) = a1;
    for (Eigen::Index i = 0; i < n; ++i) {
        Rational rowsum(0);
        for (Eigen::Index j = 0; j < cols; ++j) rowsum += Rational(supp(i, j));
        a2(i, cols) = rowsum;
    }
    a2(n, cols) = Rational(static_cast<long>(cols));
    VectorXq c2 = VectorXq::Zero(cols + 1);
    c2(cols) = Rational(1);
    auto r2 = solve_lp(a2, b1, c2, eq, /*maximize=*/true);
    if (r2.status != LpStatus::Optimal)
        throw InternalError("interior program must be solvable");
    if (r2.objective > 0) {
        out.verdict = FrameClass::Stable;
        return out;
    }
    // Duals of the interior program: y.m + y_n >= 0 on the support with
    // equality forced somewhere by the eps column, and y.b + y_n = 0.
    // Negated and centered they give a zero-degree witness.
    VectorXq raw(n);
    Rational mean(0);
    for (Eigen::Index i = 0; i < n; ++i) mean += r2.y(i);
    mean /= Rational(static_cast<long>(n));
    for (Eigen::Index i = 0; i < n; ++i) raw(i) = mean - r2.y(i);
    out.verdict = FrameClass::StrictlySemistable;
    out.alpha = scale_to_coprime_integers(raw);
    detail::check_frame_witness(supp, *out.alpha, true);
    return out;
}

// A destabilizing (or boundary) certificate: in the coordinates of `frame`,
// the integer zero-sum weight alpha gives the recorded alpha-degree.
template <class K>
struct DestabilizingCertificate {
    LinearChange<K> frame;
    Eigen::VectorXi alpha;
    long long degree{0};
};

// Recompute the degree a certificate claims; validates alpha on the way.
template <class K>
long long certificate_degree(const HomogeneousPoly<K>& f, const LinearChange<K>& frame,
                             const Eigen::VectorXi& alpha) {
    require_hm_alpha(alpha);
    return alpha_degree(apply_linear_change(f, frame), alpha);
}

// Minimal total weight of a nonnegative rational weight vector giving every
// support monomial weighted value at least 1 (equivalently 1/ratio is the
// largest weighted multiplicity per unit of total weight). The input must
// vanish at the origin.
struct WeightRatio {
    Rational value{0};
    VectorXq weights;
};

template <class K>
WeightRatio weight_lp_ratio(const AffinePoly<K>& f) {
    if (f.is_zero()) throw DomainError("weight ratio undefined for the zero polynomial");
    if (!is_zero(f.constant_term()))
        throw DomainError("weight ratio needs a polynomial vanishing at the origin");
    const Eigen::Index n = f.n_vars();
    auto supp = f.support();
    MatrixXq a(static_cast<Eigen::Index>(supp.size()), n);
    VectorXq b(static_cast<Eigen::Index>(supp.size()));
    for (size_t r = 0; r < supp.size(); ++r) {
        for (Eigen::Index i = 0; i < n; ++i)
            a(static_cast<Eigen::Index>(r), i) = Rational(supp[r](i));
        b(static_cast<Eigen::Index>(r)) = Rational(1);
    }
    VectorXq c = VectorXq::Ones(n);
    std::vector<Rel> rel(supp.size(), Rel::GE);
    auto r = solve_lp(a, b, c, rel);
    if (r.status != LpStatus::Optimal)
        throw InternalError("weight ratio program must be solvable");
    WeightRatio out;
    out.value = r.objective;
    out.weights = r.x;
    return out;
}

// Upper bound for the log canonical threshold at the origin read off the
// Newton polytope: the optimal weight w has mult_w = 1, so lct <= sum(w),
// and lct <= 1 holds for any hypersurface singularity.
template <class K>
Rational lct_upper_bound(const AffinePoly<K>& f) {
    Rational ratio = weight_lp_ratio(f).value;
    return ratio < 1 ? ratio : Rational(1);
}

// Weight-ratio instability detector: if at some frame the local equation at
// [0:...:0:1] has ratio < (N+1)/d, lifting the optimal w to the zero-sum
// weight alpha = (sum(w)/(N+1)) * 1 - (w, 0) gives negative alpha-degree.
// Exactness of the lift is the degree/multiplicity bridge identity.
template <class K>
std::optional<DestabilizingCertificate<K>> weight_lp_instability_check(
    const HomogeneousPoly<K>& f, const std::vector<LinearChange<K>>& frames) {
    if (f.is_zero()) throw DomainError("instability check undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    const Rational threshold = Rational(static_cast<long>(n)) / Rational(f.degree());
    for (const auto& g : frames) {
        if (g.size() != n) throw DomainError("frame size mismatch");
        auto local = dehomogenize(apply_linear_change(f, g), n - 1);
        if (!is_zero(local.constant_term())) continue; // center not on the hypersurface
        auto wr = weight_lp_ratio(local);
        if (!(wr.value < threshold)) continue;
        Rational share = wr.value / Rational(static_cast<long>(n));
        VectorXq raw(n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) raw(i) = share - wr.weights(i);
        raw(n - 1) = share;
        DestabilizingCertificate<K> cert{g, scale_to_coprime_integers(raw), 0};
        cert.degree = certificate_degree(f, g, cert.alpha);
        if (cert.degree >= 0) throw InternalError("weight-ratio witness failed re-verification");
        return cert;
    }
    return std::nullopt;
}

// Projective points with small coordinates (a fixed palette per field) lying
// on the hypersurface; first nonzero coordinate normalized to 1 so each point
// appears once. Deterministic order, capped.
inline std::vector<VectorXq> small_rational_points(const HomogeneousPoly<Rational>& f,
                                                   long max_coord = 2, size_t cap = 64) {
    if (f.is_zero()) throw DomainError("point scan undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    std::vector<VectorXq> found;
    std::vector<long> tuple(static_cast<size_t>(n), -max_coord);
    for (;;) {
        Eigen::Index lead = -1;
        for (Eigen::Index i = 0; i < n; ++i)
            if (tuple[static_cast<size_t>(i)] != 0) { lead = i; break; }
        if (lead >= 0 && tuple[static_cast<size_t>(lead)] == 1) {
            VectorXq p(n);
            for (Eigen::Index i = 0; i < n; ++i) p(i) = Rational(tuple[static_cast<size_t>(i)]);
            if (is_zero(evaluate(f, p))) {
                found.push_back(std::move(p));
                if (found.size() >= cap) return found;
            }
        }
        Eigen::Index k = n - 1;
        while (k >= 0 && tuple[static_cast<size_t>(k)] == max_coord) {
            tuple[static_cast<size_t>(k)] = -max_coord;
            --k;
        }
        if (k < 0) break;
        ++tuple[static_cast<size_t>(k)];
    }
    return found;
}

template <class K>
struct FrameSearchConfig {
    std::uint64_t seed{0};
    int budget{200};             // number of candidate frames to try
    bool allow_equality{false};  // also accept zero-degree witnesses
    std::vector<VectorX<K>> points; // extra centers worth focusing on
};

namespace detail {

// Product of random elementary row operations applied to the identity, so the
// result is unimodular with small entries.
inline LinearChange<Rational> random_frame_q(std::mt19937_64& rng, Eigen::Index n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> which(0, static_cast<int>(n) - 1);
    MatrixXq m = LinearChange<Rational>::identity(n).matrix();
    for (int rep = 0; rep < 2 * static_cast<int>(n); ++rep) {
        int i = which(rng), j = which(rng);
        if (i == j) continue;
        Rational c(coef(rng));
        m.row(i) += c * m.row(j);
    }
    if (rng() % 2) {
        int i = which(rng), j = which(rng);
        if (i != j) m.row(i).swap(m.row(j));
    }
    return LinearChange<Rational>(std::move(m));
}

inline LinearChange<Fp> random_frame_fp(std::mt19937_64& rng, Eigen::Index n, std::uint32_t p) {
    std::uniform_int_distribution<long long> coef(0, static_cast<long long>(p) - 1);
    for (int tries = 0; tries < 200; ++tries) {
        MatrixX<Fp> m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Fp(coef(rng), p);
        if (!is_zero(det<Fp>(m))) return LinearChange<Fp>(std::move(m));
    }
    throw InternalError("failed to sample an invertible frame");
}

} // namespace detail

// Deterministic search for a frame where the torus verdict is Unstable (or,
// with allow_equality, merely not Stable). Candidates, in order: the identity;
// frames centering each supplied point; frames through tuples of small
// rational points of the hypersurface; random frames from the seeded stream.
template <class K>
std::optional<DestabilizingCertificate<K>> find_destabilizing_frame(
    const HomogeneousPoly<K>& f, const FrameSearchConfig<K>& cfg) {
    if (f.is_zero()) throw DomainError("frame search undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    int tried = 0;
    std::optional<DestabilizingCertificate<K>> boundary;

    auto consider = [&](const LinearChange<K>& g) -> std::optional<DestabilizingCertificate<K>> {
        ++tried;
        auto fa = torus_verdict(apply_linear_change(f, g));
        if (fa.verdict == FrameClass::Unstable) {
            DestabilizingCertificate<K> cert{g, *fa.alpha, 0};
            cert.degree = certificate_degree(f, g, cert.alpha);
            return cert;
        }
        if (fa.verdict == FrameClass::StrictlySemistable && cfg.allow_equality && !boundary) {
            DestabilizingCertificate<K> cert{g, *fa.alpha, 0};
            cert.degree = certificate_degree(f, g, cert.alpha);
            if (cert.degree == 0) boundary = cert;
        }
        return std::nullopt;
    };

    if (auto c = consider(LinearChange<K>::identity(n, f.field_characteristic()))) return c;
    for (const auto& p : cfg.points) {
        if (tried >= cfg.budget) break;
        if (auto c = consider(frame_at<K>(p))) return c;
    }
    if constexpr (std::is_same_v<K, Rational>) {
        auto on_h = small_rational_points(f);
        // single points, then pairs, as leading columns of a completed frame
        for (size_t i = 0; i < on_h.size() && tried < cfg.budget; ++i) {
            if (auto g = frame_through_points<K>({on_h[i]}, n))
                if (auto c = consider(*g)) return c;
        }
        for (size_t i = 0; i < on_h.size() && tried < cfg.budget; ++i)
            for (size_t j = 0; j < on_h.size() && tried < cfg.budget; ++j) {
                if (i == j) continue;
                if (auto g = frame_through_points<K>({on_h[i], on_h[j]}, n))
                    if (auto c = consider(*g)) return c;
            }
    }
    std::mt19937_64 rng(cfg.seed);
    while (tried < cfg.budget) {
        LinearChange<K> g = [&] {
            if constexpr (std::is_same_v<K, Fp>) {
                return detail::random_frame_fp(
                    rng, n, static_cast<std::uint32_t>(f.field_characteristic()));
            } else {
                return detail::random_frame_q(rng, n);
            }
        }();
        if (auto c = consider(g)) return c;
    }
    return boundary;
}

} // namespace hmstab
