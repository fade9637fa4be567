#pragma once

// The singularity profile of a hypersurface: maximal multiplicity delta,
// singular-locus dimension s, its hyperplane-section variant s', and the
// points realizing delta with their tangent-cone classification. Over F_p the
// point data is exhaustive; over the rationals it is assembled from supplied
// points, a small-coordinate scan, and reductions modulo good primes, with
// provenance recorded so downstream verdicts can say what they depend on.

#include "hmstab/newton.hpp"
#include "hmstab/singularity.hpp"

namespace hmstab {

enum class Provenance { UserSupplied, FiniteFieldEstimate, ExactSmallCase };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::UserSupplied: return "user-supplied";
        case Provenance::FiniteFieldEstimate: return "finite-field-estimate";
        case Provenance::ExactSmallCase: return "exact-small-case";
    }
    return "";
}

template <class K>
struct MaxMultPoint {
    VectorX<K> point;
    TangentConeInfo<K> info;
};

template <class K>
struct SingularityProfile {
    long delta{1};
    Provenance delta_provenance{Provenance::ExactSmallCase};
    int s{-1};
    Provenance s_provenance{Provenance::ExactSmallCase};
    int s_prime{-1};
    Provenance s_prime_provenance{Provenance::ExactSmallCase};
    Confidence confidence{Confidence::High};
    std::vector<MaxMultPoint<K>> max_mult_points;
    std::vector<std::uint32_t> primes_used;
    std::vector<std::uint64_t> base_counts;
};

struct ProfileOptions {
    std::vector<std::uint32_t> primes{5, 7, 11};
    int trials{4};
    std::uint64_t seed{0};
    std::uint64_t budget{2'000'000};
    std::optional<int> user_s;
};

namespace detail {

inline VectorXq normalize_projective(VectorXq p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!is_zero(p(i))) {
            Rational lead = p(i);
            for (Eigen::Index j = 0; j < p.size(); ++j) p(j) /= lead;
            return p;
        }
    }
    throw DomainError("projective point must be nonzero");
}

inline std::optional<VectorX<Fp>> reduce_point_mod_p(const VectorXq& pt, std::uint32_t p) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    VectorX<Fp> out(pt.size());
    Integer pp(static_cast<long>(p));
    for (Eigen::Index i = 0; i < pt.size(); ++i) {
        Integer num = Integer(numerator(pt(i)));
        Integer den = Integer(denominator(pt(i)));
        if (den % pp == 0) return std::nullopt;
        Fp fn(static_cast<long long>(num % pp), p);
        Fp fd(static_cast<long long>(den % pp), p);
        out(i) = fn / fd;
    }
    return out;
}

inline bool same_fp_point(const VectorX<Fp>& a, const VectorX<Fp>& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!(a(i) == b(i))) return false;
    return true;
}

} // namespace detail

// Rational-input profile. User-supplied points must lie on the hypersurface;
// smooth ones among them are silently irrelevant.
inline SingularityProfile<Rational> build_profile(const HomogeneousPoly<Rational>& f,
                                                  const std::vector<VectorXq>& user_points,
                                                  const ProfileOptions& opt = {}) {
    if (f.is_zero()) throw DomainError("profile undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    SingularityProfile<Rational> prof;

    // Known singular points: supplied ones plus the small-coordinate scan.
    std::vector<VectorXq> candidates;
    auto push_candidate = [&](const VectorXq& raw) {
        VectorXq p = detail::normalize_projective(raw);
        for (const auto& q : candidates)
            if (p == q) return;
        candidates.push_back(std::move(p));
    };
    for (const auto& p : user_points) {
        if (p.size() != n) throw DomainError("point dimension mismatch");
        if (!is_zero(evaluate(f, p)))
            throw DomainError("supplied point is not on the hypersurface");
        push_candidate(p);
    }
    for (const auto& p : small_rational_points(f)) push_candidate(p);

    std::vector<MaxMultPoint<Rational>> singular_known;
    for (const auto& p : candidates) {
        auto info = multiplicity_and_cone(f, p);
        if (info.delta_p >= 2) singular_known.push_back({p, std::move(info)});
    }
    long delta_known = 1;
    for (const auto& mp : singular_known) delta_known = std::max(delta_known, mp.info.delta_p);

    if (opt.user_s) {
        int us = *opt.user_s;
        if (us < -1 || us > static_cast<int>(n) - 2)
            throw DomainError("supplied singular dimension out of range");
        if (us == -1 && !singular_known.empty())
            throw DomainError("supplied s = -1 contradicts a known singular point");
        prof.s = us;
        prof.s_provenance = Provenance::UserSupplied;
        prof.s_prime = us; // conservative: the variant never exceeds s
        prof.s_prime_provenance = Provenance::UserSupplied;
        prof.delta = delta_known;
        prof.delta_provenance = singular_known.empty() && us >= 0
                                    ? Provenance::FiniteFieldEstimate
                                    : Provenance::UserSupplied;
        prof.confidence = Confidence::High;
        for (auto& mp : singular_known)
            if (mp.info.delta_p == prof.delta) prof.max_mult_points.push_back(std::move(mp));
        return prof;
    }

    auto est = estimate_sing_dim(f, opt.primes, opt.budget);
    prof.primes_used = est.primes_used;
    prof.base_counts = est.base_counts;

    // Confirmation: at every good prime the F_p singular points are exactly
    // the reductions of the known rational ones and the quadratic extension
    // adds nothing, so the singular locus is the known finite set.
    bool confirmed = true;
    std::vector<long> prime_max_mult;
    for (size_t pi = 0; pi < est.primes_used.size(); ++pi) {
        std::uint32_t p = est.primes_used[pi];
        auto fp = reduce_mod_p(f, p);
        auto sing_p = singular_points_over_fp(*fp, opt.budget);
        long mm = 1;
        for (const auto& sp : sing_p) mm = std::max(mm, sp.multiplicity);
        prime_max_mult.push_back(mm);
        std::vector<VectorX<Fp>> reduced;
        for (const auto& mp : singular_known)
            if (auto rp = detail::reduce_point_mod_p(mp.point, p)) reduced.push_back(*rp);
        for (const auto& sp : sing_p) {
            bool lifted = false;
            for (const auto& rp : reduced) lifted |= detail::same_fp_point(sp.point, rp);
            if (!lifted) { confirmed = false; break; }
        }
        // quadratic-extension count from the estimator's ladder; a ladder cut
        // off before r = 2 cannot confirm anything
        if (est.ladders[pi].size() < 2 || est.ladders[pi][1] != sing_p.size())
            confirmed = false;
    }

    if (confirmed) {
        prof.delta = delta_known;
        prof.delta_provenance = Provenance::ExactSmallCase;
        prof.s = singular_known.empty() ? -1 : 0;
        prof.s_provenance = Provenance::ExactSmallCase;
        prof.s_prime = prof.s; // for a finite singular locus the variant equals s
        prof.s_prime_provenance = Provenance::ExactSmallCase;
        prof.confidence = Confidence::High;
    } else {
        std::sort(prime_max_mult.begin(), prime_max_mult.end());
        long med = prime_max_mult.empty() ? 1 : prime_max_mult[(prime_max_mult.size() - 1) / 2];
        prof.delta = std::max(delta_known, med);
        prof.delta_provenance = Provenance::FiniteFieldEstimate;
        prof.s = est.s;
        prof.s_provenance = Provenance::FiniteFieldEstimate;
        prof.confidence = est.confidence;
        if (prof.s < 0) {
            prof.s_prime = -1;
        } else {
            auto [sp, conf] = estimate_s_prime(f, est, opt.trials, opt.seed, opt.budget);
            prof.s_prime = sp;
            if (conf == Confidence::Low) prof.confidence = Confidence::Low;
        }
        prof.s_prime_provenance = Provenance::FiniteFieldEstimate;
    }

    for (auto& mp : singular_known)
        if (mp.info.delta_p == prof.delta) prof.max_mult_points.push_back(std::move(mp));
    return prof;
}

// Finite-field-input profile: the F_p point list is exhaustive; dimension over
// the algebraic closure is still read from extension counts.
inline SingularityProfile<Fp> build_profile(const HomogeneousPoly<Fp>& f,
                                            const std::vector<VectorX<Fp>>& user_points,
                                            const ProfileOptions& opt = {}) {
    if (f.is_zero()) throw DomainError("profile undefined for the zero polynomial");
    const Eigen::Index n = f.n_vars();
    for (const auto& p : user_points) {
        if (p.size() != n) throw DomainError("point dimension mismatch");
        if (!is_zero(evaluate(f, p)))
            throw DomainError("supplied point is not on the hypersurface");
    }
    SingularityProfile<Fp> prof;
    auto sing = singular_points_over_fp(f, opt.budget);
    prof.delta = 1;
    for (const auto& sp : sing) prof.delta = std::max(prof.delta, sp.multiplicity);

    auto sample = enumerated_dimension(f, opt.budget);
    prof.s = sample.dimension;
    prof.primes_used = {sample.p};
    prof.base_counts = {sample.counts.front()};

    // dimension estimates from each field reached; agreement across fields is
    // the exactness signal for small cases
    std::vector<int> dims;
    std::uint64_t q = 1;
    for (size_t i = 0; i < sample.counts.size(); ++i) {
        q *= sample.p;
        dims.push_back(std::clamp(dimension_from_count(sample.counts[i], q), -1,
                                  static_cast<int>(n) - 2));
    }
    bool dims_agree = std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims[0]; });
    bool no_hidden_points = sample.counts.size() >= 2 && sample.counts[1] == sample.counts[0];
    prof.s_provenance = dims_agree && sample.counts.size() >= 2
                            ? Provenance::ExactSmallCase
                            : Provenance::FiniteFieldEstimate;
    prof.delta_provenance =
        no_hidden_points ? Provenance::ExactSmallCase : Provenance::FiniteFieldEstimate;
    prof.confidence = dims_agree ? Confidence::High : Confidence::Low;

    if (prof.s < 0) {
        prof.s_prime = -1;
        prof.s_prime_provenance = prof.s_provenance;
    } else if (no_hidden_points && prof.s == 0) {
        prof.s_prime = 0;
        prof.s_prime_provenance = Provenance::ExactSmallCase;
    } else {
        int sp = hyperplane_section_dimension_fp(f, opt.trials, opt.seed, opt.budget);
        prof.s_prime = std::clamp(sp, prof.s - 1, prof.s);
        prof.s_prime_provenance = Provenance::FiniteFieldEstimate;
    }

    for (auto& sp : sing) {
        if (sp.multiplicity != prof.delta) continue;
        MaxMultPoint<Fp> mp;
        mp.info = multiplicity_and_cone(f, sp.point);
        mp.point = std::move(sp.point);
        prof.max_mult_points.push_back(std::move(mp));
    }
    return prof;
}

} // namespace hmstab
