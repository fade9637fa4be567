#pragma once

// Built-in corpus of classical examples with frozen expected verdicts, plus
// the concurrent runner behind the `corpus` subcommand. Entries can also be
// loaded from a JSON file, so a scratch corpus with deliberately wrong
// expectations exercises the mismatch reporting.

#include <future>
#include <string>
#include <vector>

#include "json.hpp"

#include "hmstab/criteria.hpp"
#include "hmstab/parse.hpp"

namespace hmstab {

struct CorpusEntry {
    std::string name;
    std::string polynomial;
    int n_vars{0};
    std::string field;  // "q" or "fp:<p>"
    Status expected_semistability{Status::Inconclusive};
    Status expected_stability{Status::Inconclusive};
    std::string source;  // which classical fact the expectation restates
};

struct CorpusOutcome {
    std::string name;
    Status expected_semistability{Status::Inconclusive};
    Status expected_stability{Status::Inconclusive};
    Status got_semistability{Status::Inconclusive};
    Status got_stability{Status::Inconclusive};
    std::vector<std::string> conditional_on;
    bool pass{false};
    std::string error;  // nonempty when the entry failed to run at all
};

inline Status status_from_string(const std::string& s) {
    if (s == "stable") return Status::Stable;
    if (s == "semistable") return Status::Semistable;
    if (s == "not-stable") return Status::NotStable;
    if (s == "not-semistable") return Status::NotSemistable;
    if (s == "inconclusive") return Status::Inconclusive;
    throw ParseError("unknown status '" + s + "'");
}

inline const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"fermat-binary-cubic", "X0^3+X1^3", 2, "q", Status::Semistable, Status::Stable,
         "binary form with three distinct roots: semistable iff no root has multiplicity "
         "> d/2, stable iff strict"},
        {"fermat-plane-cubic", "X0^3+X1^3+X2^3", 3, "q", Status::Semistable, Status::Stable,
         "smooth hypersurface of degree >= 3: stable"},
        {"fermat-plane-quartic", "X0^4+X1^4+X2^4", 3, "q", Status::Semistable, Status::Stable,
         "smooth hypersurface of degree >= 3: stable"},
        {"fermat-cubic-surface", "X0^3+X1^3+X2^3+X3^3", 4, "q", Status::Semistable,
         Status::Stable, "smooth hypersurface of degree >= 3: stable"},
        {"binary-quadric", "X0^2-X1^2", 2, "q", Status::Semistable, Status::NotStable,
         "nondegenerate quadric: semistable but never stable"},
        {"smooth-conic", "X0^2+X1^2-X2^2", 3, "q", Status::Semistable, Status::NotStable,
         "nondegenerate quadric: semistable but never stable"},
        {"quadric-surface", "X0*X1+X2*X3", 4, "q", Status::Semistable, Status::NotStable,
         "nondegenerate quadric: semistable but never stable"},
        {"nodal-plane-cubic", "X1^2*X2-X0^3-X0^2*X2", 3, "q", Status::Semistable,
         Status::NotStable,
         "plane cubic with one node: strictly semistable (degenerates to three lines)"},
        {"cuspidal-plane-cubic", "X1^2*X2-X0^3", 3, "q", Status::NotSemistable,
         Status::NotStable, "plane cubic with a cusp: unstable"},
        {"sextic-triple-point", "X0^2*X1*X2^3+X0*X1^2*X2^3+X0^6+X1^6", 3, "q",
         Status::Semistable, Status::Inconclusive,
         "sextic with one ordinary triple point: d = 6 meets the reduced bound 3(delta-1) "
         "with equality"},
        {"septic-triple-point", "X0^2*X1*X2^4+X0*X1^2*X2^4+7*X0^7+X1^7", 3, "q",
         Status::Semistable, Status::Stable,
         "septic with one ordinary triple point: d = 7 exceeds the reduced bound strictly"},
        {"fermat-quartic-f7", "X0^4+X1^4+X2^4", 3, "fp:7", Status::Semistable, Status::Stable,
         "smooth over F_7 by exhaustive enumeration: stable"},
        {"cuspidal-cubic-f7", "X1^2*X2-X0^3", 3, "fp:7", Status::NotSemistable,
         Status::NotStable, "cusp persists mod 7: unstable with the same torus certificate"},
    };
    return entries;
}

namespace detail {

inline std::uint32_t parse_field_label(const std::string& field) {
    if (field == "q") return 0;
    if (field.rfind("fp:", 0) == 0) {
        unsigned long p = 0;
        try {
            size_t used = 0;
            p = std::stoul(field.substr(3), &used);
            if (used != field.size() - 3) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ParseError("field must be q or fp:<p>, got '" + field + "'");
        }
        if (p > 0x7fffffffUL || !is_prime_u32(static_cast<std::uint32_t>(p)))
            throw DomainError(std::to_string(p) + " is not prime");
        return static_cast<std::uint32_t>(p);
    }
    throw ParseError("field must be q or fp:<p>, got '" + field + "'");
}

} // namespace detail

inline CorpusOutcome run_corpus_entry(const CorpusEntry& e, const AnalyzeOptions& opt = {}) {
    CorpusOutcome out;
    out.name = e.name;
    out.expected_semistability = e.expected_semistability;
    out.expected_stability = e.expected_stability;
    try {
        std::uint32_t p = detail::parse_field_label(e.field);
        if (p == 0) {
            auto res = analyze(parse_poly_q(e.polynomial, e.n_vars), {}, opt);
            out.got_semistability = res.semistability;
            out.got_stability = res.stability;
            out.conditional_on = std::move(res.conditional_on);
        } else {
            auto res = analyze(parse_poly_fp(e.polynomial, e.n_vars, p), {}, opt);
            out.got_semistability = res.semistability;
            out.got_stability = res.stability;
            out.conditional_on = std::move(res.conditional_on);
        }
        out.pass = out.got_semistability == e.expected_semistability &&
                   out.got_stability == e.expected_stability;
    } catch (const std::exception& ex) {
        out.pass = false;
        out.error = ex.what();
    }
    return out;
}

// Runs the entries whose names contain `filter` (empty = all) concurrently;
// results come back ordered by entry index, not completion time.
inline std::vector<CorpusOutcome> run_corpus(const std::vector<CorpusEntry>& entries,
                                             const std::string& filter = "",
                                             const AnalyzeOptions& opt = {}) {
    std::vector<const CorpusEntry*> selected;
    for (const auto& e : entries)
        if (filter.empty() || e.name.find(filter) != std::string::npos) selected.push_back(&e);
    std::vector<std::future<CorpusOutcome>> futures;
    futures.reserve(selected.size());
    for (const CorpusEntry* e : selected)
        futures.push_back(
            std::async(std::launch::async, [e, opt] { return run_corpus_entry(*e, opt); }));
    std::vector<CorpusOutcome> results;
    results.reserve(futures.size());
    for (auto& fut : futures) results.push_back(fut.get());
    return results;
}

// JSON corpus format: [{name, polynomial, n_vars, field,
// expected: {semistability, stability}, source?}, ...]
inline std::vector<CorpusEntry> corpus_from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_array()) throw ParseError("corpus file must be a JSON array");
    std::vector<CorpusEntry> entries;
    for (const auto& j : doc) {
        CorpusEntry e;
        e.name = j.at("name").get<std::string>();
        e.polynomial = j.at("polynomial").get<std::string>();
        e.n_vars = j.at("n_vars").get<int>();
        e.field = j.at("field").get<std::string>();
        const auto& exp = j.at("expected");
        e.expected_semistability = status_from_string(exp.at("semistability").get<std::string>());
        e.expected_stability = status_from_string(exp.at("stability").get<std::string>());
        if (j.contains("source")) e.source = j["source"].get<std::string>();
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace hmstab
