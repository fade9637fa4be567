#pragma once

// JSON emission and parsing: the analysis report, standalone certificate
// files, and the independent certificate verifier. All numbers travel as
// exact decimal strings ("3/4", "-2"), never floats, and key order is fixed
// so identical inputs and seed produce byte-identical documents.

#include <string>

#include "json.hpp"

#include "hmstab/criteria.hpp"
#include "hmstab/parse.hpp"

namespace hmstab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "v1";

namespace detail {

inline std::string field_label(long ch) {
    return ch == 0 ? std::string("q") : "fp:" + std::to_string(ch);
}

template <class K>
Json matrix_json(const MatrixX<K>& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json int_vector_json(const Eigen::VectorXi& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

} // namespace detail

template <class K>
Json certificate_json(const DestabilizingCertificate<K>& cert) {
    Json j;
    j["kind"] = cert.degree < 0 ? "negative" : "boundary";
    j["frame"] = detail::matrix_json(cert.frame.matrix());
    j["alpha"] = detail::int_vector_json(cert.alpha);
    j["degree_value"] = std::to_string(cert.degree);
    return j;
}

template <class K>
Json profile_json(const SingularityProfile<K>& prof) {
    Json j;
    j["delta"] = prof.delta;
    j["delta_provenance"] = to_string(prof.delta_provenance);
    j["s"] = prof.s;
    j["s_provenance"] = to_string(prof.s_provenance);
    j["s_prime"] = prof.s_prime;
    j["s_prime_provenance"] = to_string(prof.s_prime_provenance);
    j["confidence"] = prof.confidence == Confidence::High ? "high" : "low";
    Json pts = Json::array();
    for (const auto& mp : prof.max_mult_points) pts.push_back(point_to_string(mp.point));
    j["max_multiplicity_points"] = std::move(pts);
    Json primes = Json::array();
    for (auto p : prof.primes_used) primes.push_back(p);
    j["primes_used"] = std::move(primes);
    Json counts = Json::array();
    for (auto c : prof.base_counts) counts.push_back(c);
    j["base_counts"] = std::move(counts);
    return j;
}

inline Json verdict_json(const Verdict& v) {
    Json j;
    j["name"] = v.name;
    j["basis"] = v.basis;
    Json in;
    for (const auto& [k, val] : v.inputs) in[k] = val; // std::map: sorted, stable
    j["inputs"] = std::move(in);
    j["result"] = to_string(v.status);
    j["conditional_on"] = v.conditional_on;
    return j;
}

template <class K>
Json report_json(const HomogeneousPoly<K>& f, const AnalysisResult<K>& res,
                 std::uint64_t seed) {
    Json j;
    j["version"] = kReportVersion;
    Json in;
    in["polynomial"] = to_string(f);
    in["n_vars"] = static_cast<long long>(f.n_vars());
    in["degree"] = res.degree;
    in["field"] = detail::field_label(f.field_characteristic());
    in["seed"] = seed;
    j["input"] = std::move(in);
    j["profile"] = profile_json(res.profile);
    Json checks = Json::array();
    for (const auto& v : res.checks) checks.push_back(verdict_json(v));
    j["checks"] = std::move(checks);
    Json certs = Json::array();
    if (res.negative_certificate) certs.push_back(certificate_json(*res.negative_certificate));
    if (res.boundary_certificate) certs.push_back(certificate_json(*res.boundary_certificate));
    j["certificates"] = std::move(certs);
    Json fin;
    fin["semistability"] = to_string(res.semistability);
    fin["stability"] = to_string(res.stability);
    fin["conditional_on"] = res.conditional_on;
    j["final"] = std::move(fin);
    j["warnings"] = res.warnings;
    return j;
}

// Standalone certificate file: carries the input alongside the witness so the
// verifier can recompute everything from scratch.
template <class K>
Json certificate_file_json(const HomogeneousPoly<K>& f,
                           const DestabilizingCertificate<K>& cert) {
    Json j;
    j["version"] = kReportVersion;
    Json in;
    in["polynomial"] = to_string(f);
    in["n_vars"] = static_cast<long long>(f.n_vars());
    in["field"] = detail::field_label(f.field_characteristic());
    j["input"] = std::move(in);
    j["certificate"] = certificate_json(cert);
    return j;
}

namespace detail {

template <class K>
MatrixX<K> matrix_from_json(const Json& rows, Eigen::Index n, long ch) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
        throw ParseError("frame must be an n x n matrix");
    MatrixX<K> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("frame must be an n x n matrix");
        for (Eigen::Index j = 0; j < n; ++j) {
            const Json& cell = row[static_cast<size_t>(j)];
            if (!cell.is_string()) throw ParseError("frame entries must be strings");
            Rational r = parse_rational(cell.get<std::string>());
            if constexpr (std::is_same_v<K, Rational>) {
                m(i, j) = r;
            } else {
                Integer num = boost::multiprecision::numerator(r);
                Integer den = boost::multiprecision::denominator(r);
                auto p = static_cast<std::uint32_t>(ch);
                Fp fden(static_cast<long long>(den % p), p);
                if (is_zero(fden)) throw ParseError("frame entry denominator vanishes mod p");
                m(i, j) = Fp(static_cast<long long>(num % p), p) / fden;
            }
        }
    }
    return m;
}

inline Eigen::VectorXi int_vector_from_json(const Json& a) {
    if (!a.is_array()) throw ParseError("alpha must be an integer array");
    Eigen::VectorXi v(static_cast<Eigen::Index>(a.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Json& cell = a[static_cast<size_t>(i)];
        if (!cell.is_number_integer()) throw ParseError("alpha entries must be integers");
        v(i) = cell.get<int>();
    }
    return v;
}

} // namespace detail

// Outcome of certificate verification, mirroring the CLI exit-code contract:
// 0 = the claimed sign holds, 1 = it does not, 2 = malformed input.
struct VerifyOutcome {
    int code{2};
    std::string message;
};

inline VerifyOutcome verify_certificate_document(const Json& doc) {
    VerifyOutcome out;
    try {
        if (!doc.is_object() || !doc.contains("input") || !doc.contains("certificate"))
            throw ParseError("expected {input, certificate}");
        if (doc.contains("version") && doc["version"] != kReportVersion)
            throw ParseError("unsupported version");
        const Json& in = doc["input"];
        const Json& cj = doc["certificate"];
        int n_vars = in.at("n_vars").get<int>();
        if (n_vars < 2) throw ParseError("n_vars must be at least 2");
        std::string field = in.at("field").get<std::string>();
        std::string poly = in.at("polynomial").get<std::string>();
        std::string kind = cj.at("kind").get<std::string>();
        if (kind != "negative" && kind != "boundary")
            throw ParseError("certificate kind must be negative or boundary");
        Rational claimed = parse_rational(cj.at("degree_value").get<std::string>());
        if (kind == "negative" && !(claimed < 0))
            throw ParseError("negative certificate must claim a negative degree");
        if (kind == "boundary" && !is_zero(claimed))
            throw ParseError("boundary certificate must claim degree zero");
        Eigen::VectorXi alpha = detail::int_vector_from_json(cj.at("alpha"));
        if (alpha.size() != n_vars) throw ParseError("alpha length must equal n_vars");

        long long recomputed = 0;
        if (field == "q") {
            auto f = parse_poly_q(poly, n_vars);
            auto m = detail::matrix_from_json<Rational>(cj.at("frame"), n_vars, 0);
            LinearChange<Rational> g(std::move(m)); // throws DomainError if singular
            recomputed = certificate_degree(f, g, alpha);
        } else if (field.rfind("fp:", 0) == 0) {
            auto p = static_cast<std::uint32_t>(std::stoul(field.substr(3)));
            auto f = parse_poly_fp(poly, n_vars, p);
            auto m = detail::matrix_from_json<Fp>(cj.at("frame"), n_vars, p);
            LinearChange<Fp> g(std::move(m));
            recomputed = certificate_degree(f, g, alpha);
        } else {
            throw ParseError("field must be q or fp:<p>");
        }

        const bool holds = kind == "negative" ? recomputed < 0 : recomputed == 0;
        out.code = holds ? 0 : 1;
        out.message = "recomputed degree " + std::to_string(recomputed) +
                      (holds ? ": claimed sign holds" : ": claimed sign does not hold");
        return out;
    } catch (const Json::exception& e) {
        out.message = std::string("malformed certificate: ") + e.what();
    } catch (const std::invalid_argument& e) {
        out.message = std::string("malformed certificate: ") + e.what();
    } catch (const Error& e) {
        out.message = std::string("malformed certificate: ") + e.what();
    }
    out.code = 2;
    return out;
}

} // namespace hmstab
