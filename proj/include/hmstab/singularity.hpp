#pragma once

// Local geometry of a hypersurface at a point: multiplicity and tangent cone
// through a centering frame, rank tests classifying the cone (pure power of a
// linear form / cone over a smaller hypersurface), exhaustive singular-point
// lists over F_p, and heuristic dimension estimators for the singular locus
// driven by point counts over finite fields and their extensions.

#include <algorithm>
#include <cmath>
#include <random>

#include "hmstab/enumerate.hpp"
#include "hmstab/linear_change.hpp"

namespace hmstab {

enum class Tri { Yes, No, Unknown };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Unknown: return "unknown";
    }
    return "";
}

// A projective point together with the frame that centers it at [0:...:0:1].
template <class K>
struct PointedFrame {
    VectorX<K> point;
    LinearChange<K> frame;
};

template <class K>
PointedFrame<K> pointed_frame_at(const VectorX<K>& p) {
    return PointedFrame<K>{p, frame_at<K>(p)};
}

// Multiplicity and tangent cone of F at the centered point. delta_p == 0 is
// the off-hypersurface sentinel (cone stays the zero polynomial).
template <class K>
struct TangentConeInfo {
    long delta_p{0};
    HomogeneousPoly<K> cone{1, 0};
    Tri pure_power{Tri::Unknown};          // cone = c * (linear form)^delta
    Tri cone_over_hyperplane{Tri::Unknown};// cone independent of one direction
};

namespace detail {

// Coefficient matrix of the partial derivatives of h: one row per variable,
// one column per monomial appearing in any partial.
template <class K>
int partials_rank(const HomogeneousPoly<K>& h) {
    const Eigen::Index n = h.n_vars();
    std::map<Monomial, Eigen::Index, GradedLexLess> col_of;
    std::vector<HomogeneousPoly<K>> parts;
    for (Eigen::Index i = 0; i < n; ++i) {
        parts.push_back(partial_derivative(h, i));
        for (const auto& [m, c] : parts.back().terms())
            col_of.emplace(m, static_cast<Eigen::Index>(col_of.size()));
    }
    if (col_of.empty()) return 0;
    MatrixX<K> a(n, static_cast<Eigen::Index>(col_of.size()));
    const long ch = h.field_characteristic();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = scalar_in<K>(0, ch);
    for (Eigen::Index i = 0; i < n; ++i)
        for (const auto& [m, c] : parts[static_cast<size_t>(i)].terms())
            a(i, col_of.at(m)) = c;
    return rank<K>(a);
}

} // namespace detail

// Is h a scalar multiple of the delta-th power of a linear form (over the
// algebraic closure)? Decided by rank of the partials' coefficient matrix;
// the derivative argument is sound only when char(k) = 0 or char(k) > delta,
// otherwise Unknown.
template <class K>
Tri is_pure_power(const HomogeneousPoly<K>& h) {
    if (h.is_zero()) throw DomainError("pure-power test undefined for the zero polynomial");
    if (h.degree() < 1) throw DomainError("pure-power test needs positive degree");
    const long ch = h.field_characteristic();
    if (ch > 0 && ch <= h.degree()) return Tri::Unknown;
    return detail::partials_rank(h) == 1 ? Tri::Yes : Tri::No;
}

// Is h, after some invertible linear change, independent of one variable
// (i.e. a cone over a hypersurface in a hyperplane)? Equivalent to linear
// dependence of the partials; same characteristic guard as above. In two
// variables this coincides with being a pure power.
template <class K>
Tri is_cone(const HomogeneousPoly<K>& h) {
    if (h.is_zero()) throw DomainError("cone test undefined for the zero polynomial");
    if (h.n_vars() < 2) throw DomainError("cone test needs at least two variables");
    if (h.degree() < 1) throw DomainError("cone test needs positive degree");
    const long ch = h.field_characteristic();
    if (ch > 0 && ch <= h.degree()) return Tri::Unknown;
    return detail::partials_rank(h) < h.n_vars() ? Tri::Yes : Tri::No;
}

template <class K>
TangentConeInfo<K> multiplicity_and_cone(const HomogeneousPoly<K>& f,
                                         const PointedFrame<K>& pf) {
    if (f.is_zero()) throw DomainError("multiplicity undefined for the zero polynomial");
    if (pf.frame.size() != f.n_vars()) throw DomainError("frame size mismatch");
    auto local = dehomogenize(apply_linear_change(f, pf.frame), f.n_vars() - 1);
    TangentConeInfo<K> info;
    if (!is_zero(local.constant_term())) return info; // off the hypersurface
    info.delta_p = local.min_total_degree();
    info.cone = to_homogeneous(homogeneous_component(local, info.delta_p), info.delta_p);
    info.pure_power = is_pure_power(info.cone);
    info.cone_over_hyperplane =
        info.cone.n_vars() >= 2 ? is_cone(info.cone) : Tri::Unknown;
    return info;
}

template <class K>
TangentConeInfo<K> multiplicity_and_cone(const HomogeneousPoly<K>& f, const VectorX<K>& p) {
    return multiplicity_and_cone(f, pointed_frame_at<K>(p));
}

// Exact list of F_p-rational singular points, each with its multiplicity.
struct FpSingularPoint {
    VectorX<Fp> point;
    long multiplicity{0};
};

inline std::vector<FpSingularPoint> singular_points_over_fp(const HomogeneousPoly<Fp>& f,
                                                            std::uint64_t budget) {
    std::vector<FpSingularPoint> out;
    for (auto& p : singular_points_fp(f, budget)) {
        FpSingularPoint sp;
        sp.multiplicity = multiplicity_and_cone(f, p).delta_p;
        sp.point = std::move(p);
        out.push_back(std::move(sp));
    }
    return out;
}

// Dimension read off a point count over F_q: a linear subspace of dimension s
// has exactly (q^{s+1}-1)/(q-1) points, so invert that and round. -1 for an
// empty set; the caller clamps to the ambient range.
inline int dimension_from_count(std::uint64_t count, std::uint64_t q) {
    if (count == 0) return -1;
    double val = std::log(static_cast<double>(count) * (static_cast<double>(q) - 1.0) + 1.0) /
                 std::log(static_cast<double>(q));
    return static_cast<int>(std::lround(val)) - 1;
}

// Singular-point counts of f over F_{p^r} for r = 1.. up to degree 3, stopping
// when the enumeration budget is exceeded; the dimension estimate comes from
// the largest field reached (conjugate points invisible over F_p surface in
// the quadratic and cubic extensions).
struct DimensionSample {
    std::uint32_t p{0};
    std::vector<std::uint64_t> counts; // counts[i] is the count over F_{p^{i+1}}
    int dimension{-1};
};

inline DimensionSample enumerated_dimension(const HomogeneousPoly<Fp>& f,
                                            std::uint64_t budget) {
    DimensionSample out;
    out.p = static_cast<std::uint32_t>(f.field_characteristic());
    std::uint64_t q = 1;
    for (int r = 1; r <= 3; ++r) {
        GFExt gf(out.p, r);
        try {
            out.counts.push_back(count_singular_points(f, gf, budget));
        } catch (const BudgetError&) {
            break;
        }
        q *= out.p;
        // two consecutive levels with the same count and the same reading
        // settle the estimate; only disagreement escalates further
        const size_t k = out.counts.size();
        if (k >= 2 && out.counts[k - 1] == out.counts[k - 2] &&
            dimension_from_count(out.counts[k - 1], q) ==
                dimension_from_count(out.counts[k - 2], q / out.p))
            break;
    }
    if (out.counts.empty()) throw BudgetError("finite field enumeration budget exceeded");
    out.dimension = dimension_from_count(out.counts.back(), q);
    const int max_dim = static_cast<int>(f.n_vars()) - 2;
    out.dimension = std::clamp(out.dimension, -1, max_dim);
    return out;
}

enum class Confidence { High, Low };

inline const char* to_string(Confidence c) {
    return c == Confidence::High ? "high" : "low";
}

// Heuristic dimension of the singular locus of a rational form: reduce mod
// each good prime, estimate per prime from extension counts, and combine.
// High confidence requires all per-prime estimates to agree.
struct SingDimEstimate {
    int s{-1};
    Confidence confidence{Confidence::Low};
    std::vector<std::uint32_t> primes_used;
    std::vector<std::uint64_t> base_counts;   // r = 1 count per good prime
    std::vector<int> per_prime_dims;
    std::vector<std::vector<std::uint64_t>> ladders; // full count ladder per good prime
};

inline SingDimEstimate estimate_sing_dim(const HomogeneousPoly<Rational>& f,
                                         const std::vector<std::uint32_t>& primes = {5, 7, 11},
                                         std::uint64_t budget = 2'000'000) {
    if (f.is_zero()) throw DomainError("dimension estimate undefined for the zero polynomial");
    SingDimEstimate est;
    for (auto p : primes) {
        auto fp = reduce_mod_p(f, p);
        if (!fp) continue; // bad prime
        auto sample = enumerated_dimension(*fp, budget);
        est.primes_used.push_back(p);
        est.base_counts.push_back(sample.counts.front());
        est.per_prime_dims.push_back(sample.dimension);
        est.ladders.push_back(std::move(sample.counts));
    }
    if (est.primes_used.size() < 2)
        throw DomainError("need at least two primes of good reduction");
    std::vector<int> dims = est.per_prime_dims;
    std::sort(dims.begin(), dims.end());
    est.s = dims[(dims.size() - 1) / 2]; // lower median
    bool agree = std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims[0]; });
    est.confidence = agree ? Confidence::High : Confidence::Low;
    return est;
}

// Largest hyperplane-section dimension of the singular locus over F_p: every
// coordinate hyperplane plus `trials` seeded random hyperplanes, each scored
// by the count of F_p singular points it contains.
inline int hyperplane_section_dimension_fp(const HomogeneousPoly<Fp>& f, int trials,
                                           std::uint64_t seed, std::uint64_t budget) {
    const auto p = static_cast<std::uint32_t>(f.field_characteristic());
    const Eigen::Index n = f.n_vars();
    auto pts = singular_points_fp(f, budget);
    if (pts.empty()) return -1;
    std::vector<VectorX<Fp>> normals;
    for (Eigen::Index i = 0; i < n; ++i) {
        VectorX<Fp> e(n);
        for (Eigen::Index j = 0; j < n; ++j) e(j) = Fp(i == j ? 1 : 0, p);
        normals.push_back(std::move(e));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> res(0, static_cast<long long>(p) - 1);
    for (int t = 0; t < trials; ++t) {
        VectorX<Fp> v(n);
        bool nonzero = false;
        for (Eigen::Index j = 0; j < n; ++j) {
            v(j) = Fp(res(rng), p);
            nonzero |= !is_zero(v(j));
        }
        if (nonzero) normals.push_back(std::move(v));
    }
    int best = -1;
    for (const auto& v : normals) {
        std::uint64_t on = 0;
        for (const auto& pt : pts) {
            Fp dot(0, p);
            for (Eigen::Index j = 0; j < n; ++j) dot = dot + v(j) * pt(j);
            if (is_zero(dot)) ++on;
        }
        best = std::max(best, dimension_from_count(on, p));
    }
    return std::clamp(best, -1, static_cast<int>(n) - 2);
}

// Heuristic for s' = max over hyperplanes V of dim(H_sing intersect V); the
// result is clamped into [s-1, s], which holds whenever both are exact.
inline std::pair<int, Confidence> estimate_s_prime(const HomogeneousPoly<Rational>& f,
                                                   const SingDimEstimate& base, int trials,
                                                   std::uint64_t seed,
                                                   std::uint64_t budget = 2'000'000) {
    if (base.s < 0) return {-1, base.confidence};
    std::vector<int> vals;
    for (auto p : base.primes_used) {
        auto fp = reduce_mod_p(f, p);
        if (!fp) continue;
        vals.push_back(hyperplane_section_dimension_fp(*fp, trials, seed ^ p, budget));
    }
    if (vals.empty()) throw DomainError("need at least one prime of good reduction");
    std::sort(vals.begin(), vals.end());
    int sp = vals[(vals.size() - 1) / 2];
    bool agree = std::all_of(vals.begin(), vals.end(), [&](int v) { return v == vals[0]; });
    Confidence conf = agree ? Confidence::High : Confidence::Low;
    int clamped = std::clamp(sp, base.s - 1, base.s);
    if (clamped != sp) conf = Confidence::Low;
    return {clamped, conf};
}

} // namespace hmstab
