#pragma once

// Sufficient-condition checkers tying the degree to the singularity profile
// (maximal multiplicity, singular dimension and its hyperplane-section
// variant, tangent-cone classification), and the top-level analyze pipeline:
// build the profile, run every applicable positive checker, search for
// destabilizing one-parameter-subgroup certificates, and merge the results
// into final statuses with explicit provenance.

#include <algorithm>
#include <future>
#include <map>
#include <type_traits>

#include "hmstab/newton.hpp"
#include "hmstab/profile.hpp"

namespace hmstab {

enum class Status { Stable, Semistable, NotStable, NotSemistable, Inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Stable: return "stable";
        case Status::Semistable: return "semistable";
        case Status::NotStable: return "not-stable";
        case Status::NotSemistable: return "not-semistable";
        case Status::Inconclusive: return "inconclusive";
    }
    return "";
}

// Outcome of one sufficient-condition check. `basis` is the rule evaluated;
// `conditional_on` lists the estimated inputs the conclusion depends on
// (empty means the conclusion is unconditional).
struct Verdict {
    std::string name;
    Status status{Status::Inconclusive};
    std::string basis;
    std::map<std::string, long long> inputs;
    std::vector<std::string> conditional_on;
};

namespace detail {

inline void require_criteria_ranges(long d, long delta, int s, int n) {
    if (n < 1) throw DomainError("criteria need projective dimension >= 1");
    if (d < 2) throw DomainError("criteria need degree >= 2");
    if (delta < 1) throw DomainError("multiplicity must be at least 1");
    if (s < -1 || s > n - 1) throw DomainError("singular dimension out of range");
}

inline Status threshold_status(long d, long long bound) {
    if (d > bound) return Status::Stable;
    if (d == bound) return Status::Semistable;
    return Status::Inconclusive;
}

} // namespace detail

// d >= delta * min(N+1, s+3): semistable, strictly greater: stable.
inline Verdict multiplicity_bound_check(long d, long delta, int s, int n) {
    detail::require_criteria_ranges(d, delta, s, n);
    const long long m = std::min<long long>(n + 1, s + 3);
    const long long bound = delta * m;
    Verdict v;
    v.name = "multiplicity-bound";
    v.basis = "d >= delta * min(N+1, s+3)";
    v.inputs = {{"d", d}, {"delta", delta}, {"s", s}, {"N", n}, {"bound", bound}};
    v.status = detail::threshold_status(d, bound);
    return v;
}

// Same bound with the multiplicity lowered by one, valid when no tangent
// cone at a maximal-multiplicity point is a cone over a hypersurface in a
// hyperplane. Any yes/unknown flag (or an empty flag list, i.e. no point to
// inspect) blocks the refinement.
inline Verdict reduced_multiplicity_bound_check(long d, long delta, int s, int n,
                                                const std::vector<Tri>& cone_flags) {
    detail::require_criteria_ranges(d, delta, s, n);
    if (n < 2) throw DomainError("reduced multiplicity bound needs N >= 2");
    if (delta < 2) throw DomainError("reduced multiplicity bound needs delta >= 2");
    const long long m = std::min<long long>(n + 1, s + 3);
    const long long bound = (delta - 1) * m;
    Verdict v;
    v.name = "reduced-multiplicity-bound";
    v.basis = "d >= (delta-1) * min(N+1, s+3), no maximal tangent cone a cone";
    v.inputs = {{"d", d}, {"delta", delta}, {"s", s}, {"N", n}, {"bound", bound}};
    bool applies = !cone_flags.empty();
    for (Tri t : cone_flags) applies &= t == Tri::No;
    v.status = applies ? detail::threshold_status(d, bound) : Status::Inconclusive;
    return v;
}

// Multiplicity bound driven by the hyperplane-section dimension s' of the
// singular locus instead of s itself; coincides with the plain bound when
// s' = s and is strictly weaker when s' = s - 1.
inline Verdict section_dimension_bound_check(long d, long delta, int s_prime, int n) {
    detail::require_criteria_ranges(d, delta, s_prime, n);
    const long long m = std::min<long long>(n + 1, s_prime + 3);
    const long long bound = delta * m;
    Verdict v;
    v.name = "section-dimension-bound";
    v.basis = "d >= delta * min(N+1, s'+3)";
    v.inputs = {{"d", d}, {"delta", delta}, {"s_prime", s_prime}, {"N", n}, {"bound", bound}};
    v.status = detail::threshold_status(d, bound);
    return v;
}

// d >= (N+1)(delta-1), valid when no maximal-multiplicity tangent cone is a
// power of a linear form (i.e. its support is not a hyperplane). Dimension
// free: no singular-dimension input at all.
inline Verdict hyperplane_cone_bound_check(long d, long delta, int n,
                                           const std::vector<Tri>& pure_power_flags) {
    if (n < 1) throw DomainError("criteria need projective dimension >= 1");
    if (d < 2) throw DomainError("criteria need degree >= 2");
    if (delta < 2) throw DomainError("hyperplane cone bound needs delta >= 2");
    const long long bound = static_cast<long long>(n + 1) * (delta - 1);
    Verdict v;
    v.name = "hyperplane-cone-bound";
    v.basis = "d >= (N+1)(delta-1), no maximal tangent cone a hyperplane power";
    v.inputs = {{"d", d}, {"delta", delta}, {"N", n}, {"bound", bound}};
    bool applies = !pure_power_flags.empty();
    for (Tri t : pure_power_flags) applies &= t == Tri::No;
    v.status = applies ? detail::threshold_status(d, bound) : Status::Inconclusive;
    return v;
}

struct AnalyzeOptions {
    ProfileOptions profile;
    std::uint64_t search_seed{0};
    int search_budget{200};
    bool negative_search{true};
};

template <class K>
struct AnalysisResult {
    long degree{0};
    Eigen::Index n_coords{0};
    SingularityProfile<K> profile;
    std::vector<Verdict> checks;
    std::optional<DestabilizingCertificate<K>> negative_certificate; // degree < 0
    std::optional<DestabilizingCertificate<K>> boundary_certificate; // degree = 0
    Status semistability{Status::Inconclusive};
    Status stability{Status::Inconclusive};
    std::vector<std::string> conditional_on; // applies to the final statuses
    std::vector<std::string> warnings;
};

namespace detail {

inline void append_provenance_conditions(std::vector<std::string>& out, Provenance delta_p,
                                         Provenance dim_p, const std::string& dim_label) {
    if (delta_p == Provenance::FiniteFieldEstimate)
        out.push_back("maximal multiplicity estimated over finite fields, not proven");
    else if (delta_p == Provenance::UserSupplied)
        out.push_back("maximal multiplicity depends on caller-supplied data");
    if (dim_p == Provenance::FiniteFieldEstimate)
        out.push_back(dim_label + " estimated over finite fields, not proven");
    else if (dim_p == Provenance::UserSupplied)
        out.push_back(dim_label + " supplied by the caller, not independently verified");
}

// The final statuses take the strongest applicable results, preferring
// unconditional checks; certificates are exact and always win over
// conditional positives, while a contradiction with an unconditional
// positive indicates a bug, not a borderline input.
template <class K>
void merge_verdicts(AnalysisResult<K>& res) {
    const Verdict* semi = nullptr;
    const Verdict* stable = nullptr;
    auto better = [](const Verdict* cur, const Verdict& cand) {
        if (!cur) return true;
        return !cur->conditional_on.empty() && cand.conditional_on.empty();
    };
    for (const auto& v : res.checks) {
        if (v.status == Status::Stable || v.status == Status::Semistable)
            if (better(semi, v)) semi = &v;
        if (v.status == Status::Stable)
            if (better(stable, v)) stable = &v;
    }
    const bool uncond_semi = semi && semi->conditional_on.empty();
    const bool uncond_stable = stable && stable->conditional_on.empty();

    if (res.negative_certificate) {
        if (uncond_semi)
            throw InternalError(
                "negative certificate contradicts an unconditional positive verdict");
        res.semistability = Status::NotSemistable;
        res.stability = Status::NotStable;
        res.conditional_on.clear();
        return;
    }

    std::vector<std::string> conds;
    if (res.boundary_certificate) {
        if (uncond_stable)
            throw InternalError(
                "zero-degree witness contradicts an unconditional stable verdict");
        res.stability = Status::NotStable;
    } else if (stable) {
        res.stability = Status::Stable;
        conds.insert(conds.end(), stable->conditional_on.begin(), stable->conditional_on.end());
    }
    if (semi) {
        res.semistability = Status::Semistable;
        conds.insert(conds.end(), semi->conditional_on.begin(), semi->conditional_on.end());
    }
    // dedupe while keeping first occurrence order
    for (const auto& c : conds)
        if (std::find(res.conditional_on.begin(), res.conditional_on.end(), c) ==
            res.conditional_on.end())
            res.conditional_on.push_back(c);
}

} // namespace detail

template <class K>
AnalysisResult<K> analyze(const HomogeneousPoly<K>& f, const std::vector<VectorX<K>>& points = {},
                          const AnalyzeOptions& opt = {}) {
    if (f.is_zero()) throw DomainError("analysis undefined for the zero polynomial");
    if (f.degree() < 2) throw DomainError("analysis needs degree >= 2");
    AnalysisResult<K> res;
    res.degree = f.degree();
    res.n_coords = f.n_vars();
    res.profile = build_profile(f, points, opt.profile);
    const auto& prof = res.profile;
    const int n = static_cast<int>(f.n_vars()) - 1;
    const long d = f.degree();

    // The frame search only needs the profile's point list, so it can overlap
    // with the positive checkers; both sides are pure and the merge below is a
    // deterministic fold, so the result is identical to a sequential run.
    std::future<std::optional<DestabilizingCertificate<K>>> search;
    if (opt.negative_search) {
        FrameSearchConfig<K> cfg;
        cfg.seed = opt.search_seed;
        cfg.budget = opt.search_budget;
        cfg.allow_equality = true;
        for (const auto& mp : prof.max_mult_points) cfg.points.push_back(mp.point);
        for (const auto& p : points) cfg.points.push_back(p);
        search = std::async(std::launch::async, [&f, cfg = std::move(cfg)] {
            return find_destabilizing_frame(f, cfg);
        });
    }

    // consistency sweep for a caller-supplied singular dimension: cheap
    // finite-field counts can flag (but not prove) an understated claim
    if constexpr (std::is_same_v<K, Rational>) {
        if (opt.profile.user_s) {
            int flagged = 0, sampled = 0;
            for (auto p : opt.profile.primes) {
                if (sampled >= 2) break;
                auto fp = reduce_mod_p(f, p);
                if (!fp) continue;
                try {
                    auto sample = enumerated_dimension(*fp, opt.profile.budget);
                    ++sampled;
                    if (sample.dimension > *opt.profile.user_s) ++flagged;
                } catch (const BudgetError&) {
                    break;
                }
            }
            if (flagged == 2)
                res.warnings.push_back(
                    "finite-field estimates exceed the supplied singular dimension");
        }
    }

    {
        auto v = multiplicity_bound_check(d, prof.delta, prof.s, n);
        detail::append_provenance_conditions(v.conditional_on, prof.delta_provenance,
                                             prof.s_provenance, "singular dimension");
        res.checks.push_back(std::move(v));
    }
    {
        auto v = section_dimension_bound_check(d, prof.delta, prof.s_prime, n);
        detail::append_provenance_conditions(v.conditional_on, prof.delta_provenance,
                                             prof.s_prime_provenance,
                                             "hyperplane-section dimension");
        res.checks.push_back(std::move(v));
    }
    if (prof.delta >= 2) {
        std::vector<Tri> cone_flags, power_flags;
        for (const auto& mp : prof.max_mult_points) {
            cone_flags.push_back(mp.info.cone_over_hyperplane);
            power_flags.push_back(mp.info.pure_power);
        }
        const bool points_complete = prof.delta_provenance == Provenance::ExactSmallCase;
        if (n >= 2) {
            auto v = reduced_multiplicity_bound_check(d, prof.delta, prof.s, n, cone_flags);
            detail::append_provenance_conditions(v.conditional_on, prof.delta_provenance,
                                                 prof.s_provenance, "singular dimension");
            if (!points_complete)
                v.conditional_on.push_back(
                    "maximal-multiplicity point list possibly incomplete");
            res.checks.push_back(std::move(v));
        }
        {
            auto v = hyperplane_cone_bound_check(d, prof.delta, n, power_flags);
            detail::append_provenance_conditions(v.conditional_on, prof.delta_provenance,
                                                 Provenance::ExactSmallCase, "");
            if (!points_complete)
                v.conditional_on.push_back(
                    "maximal-multiplicity point list possibly incomplete");
            res.checks.push_back(std::move(v));
        }
    }

    if (search.valid()) {
        if (auto cert = search.get()) {
            if (cert->degree < 0)
                res.negative_certificate = std::move(cert);
            else
                res.boundary_certificate = std::move(cert);
        }
    }

    detail::merge_verdicts(res);
    return res;
}

} // namespace hmstab
