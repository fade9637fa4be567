// hmstab: exact (semi)stability analysis of projective hypersurfaces.
//
//   hmstab analyze --poly <text|@file> --nvars <N> [--field q|fp:<p>] ...
//   hmstab verify <certificate.json>
//   hmstab corpus [filter] [--file <corpus.json>]
//
// Exit codes: 0 = success (any verdict / claimed sign holds / all entries
// match), 1 = verification or corpus mismatch, 2 = input error, 3 = internal
// contradiction.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hmstab/corpus.hpp"
#include "hmstab/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hmstab::ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string poly_text(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
    return arg;
}

// One point per line, "[a0:a1:...:aN]"; blank lines and '#' comments skipped.
std::vector<std::string> point_lines(const std::string& path) {
    std::istringstream in(slurp(path));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

struct AnalyzeArgs {
    std::string poly;
    int ambient_dim{0};  // N; the polynomial lives in X0..XN
    std::string field{"q"};
    std::optional<int> user_s;
    std::string points_file;
    int budget{200};
    std::uint64_t seed{0};
    std::string cert_path;
};

template <class K>
int run_analyze(const hmstab::HomogeneousPoly<K>& f, const std::vector<hmstab::VectorX<K>>& pts,
                const AnalyzeArgs& args) {
    hmstab::AnalyzeOptions opt;
    opt.profile.seed = args.seed;
    opt.profile.user_s = args.user_s;
    opt.search_seed = args.seed;
    opt.search_budget = args.budget;
    auto res = hmstab::analyze(f, pts, opt);
    std::cout << hmstab::report_json(f, res, args.seed).dump(2) << "\n";
    if (!args.cert_path.empty()) {
        const hmstab::DestabilizingCertificate<K>* cert =
            res.negative_certificate   ? &*res.negative_certificate
            : res.boundary_certificate ? &*res.boundary_certificate
                                       : nullptr;
        if (!cert) {
            std::cerr << "no certificate found; nothing written to " << args.cert_path << "\n";
        } else {
            std::ofstream out(args.cert_path, std::ios::binary);
            if (!out) throw hmstab::ParseError("cannot write file '" + args.cert_path + "'");
            out << hmstab::certificate_file_json(f, *cert).dump(2) << "\n";
        }
    }
    return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args) {
    if (args.ambient_dim < 1)
        throw hmstab::DomainError("--nvars must be a positive projective dimension N");
    if (args.budget < 0) throw hmstab::DomainError("--budget must be nonnegative");
    const int n_coords = args.ambient_dim + 1;
    const std::string text = poly_text(args.poly);
    const std::uint32_t p = hmstab::detail::parse_field_label(args.field);
    if (p == 0) {
        auto f = hmstab::parse_poly_q(text, n_coords);
        std::vector<hmstab::VectorX<hmstab::Rational>> pts;
        if (!args.points_file.empty())
            for (const auto& line : point_lines(args.points_file))
                pts.push_back(hmstab::parse_point_q(line, n_coords));
        return run_analyze(f, pts, args);
    }
    auto f = hmstab::parse_poly_fp(text, n_coords, p);
    std::vector<hmstab::VectorX<hmstab::Fp>> pts;
    if (!args.points_file.empty())
        for (const auto& line : point_lines(args.points_file))
            pts.push_back(hmstab::parse_point_fp(line, n_coords, p));
    return run_analyze(f, pts, args);
}

int cmd_verify(const std::string& path) {
    hmstab::Json doc;
    try {
        doc = hmstab::Json::parse(slurp(path));
    } catch (const hmstab::Json::exception& e) {
        std::cerr << "malformed certificate: " << e.what() << "\n";
        return kExitInput;
    }
    auto outcome = hmstab::verify_certificate_document(doc);
    (outcome.code == kExitOk ? std::cout : std::cerr) << outcome.message << "\n";
    return outcome.code;
}

int cmd_corpus(const std::string& filter, const std::string& file) {
    std::vector<hmstab::CorpusEntry> loaded;
    if (!file.empty()) loaded = hmstab::corpus_from_json(hmstab::Json::parse(slurp(file)));
    const auto& entries = file.empty() ? hmstab::builtin_corpus() : loaded;
    auto results = hmstab::run_corpus(entries, filter);

    auto pair_label = [](hmstab::Status a, hmstab::Status b) {
        return std::string(hmstab::to_string(a)) + "/" + hmstab::to_string(b);
    };
    size_t name_w = 5, exp_w = 8, got_w = 3;
    for (const auto& r : results) {
        name_w = std::max(name_w, r.name.size());
        exp_w = std::max(exp_w, pair_label(r.expected_semistability, r.expected_stability).size());
        got_w = std::max(got_w, pair_label(r.got_semistability, r.got_stability).size());
    }
    std::cout << std::left << std::setw(static_cast<int>(name_w + 2)) << "entry"
              << std::setw(static_cast<int>(exp_w + 2)) << "expected"
              << std::setw(static_cast<int>(got_w + 2)) << "got"
              << "pass\n";
    int mismatches = 0;
    for (const auto& r : results) {
        std::cout << std::left << std::setw(static_cast<int>(name_w + 2)) << r.name
                  << std::setw(static_cast<int>(exp_w + 2))
                  << pair_label(r.expected_semistability, r.expected_stability)
                  << std::setw(static_cast<int>(got_w + 2))
                  << pair_label(r.got_semistability, r.got_stability)
                  << (r.pass ? "ok" : "MISMATCH") << "\n";
        if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
        if (!r.pass) ++mismatches;
    }
    std::cout << results.size() << " entries, " << mismatches << " mismatch"
              << (mismatches == 1 ? "" : "es") << "\n";
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact (semi)stability analysis of projective hypersurfaces"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    int user_s_raw = 0;
    auto* analyze = app.add_subcommand("analyze", "analyze one hypersurface, report as JSON");
    analyze->add_option("--poly", aa.poly, "polynomial text, or @path to read it from a file")
        ->required();
    analyze
        ->add_option("--nvars", aa.ambient_dim,
                     "ambient projective dimension N; the polynomial uses X0..XN")
        ->required();
    analyze->add_option("--field", aa.field, "coefficient field: q (rationals) or fp:<p>")
        ->capture_default_str();
    auto* s_opt = analyze->add_option("--s", user_s_raw,
                                      "caller-asserted dimension of the singular locus");
    analyze->add_option("--points", aa.points_file,
                        "file of known singular points, one [a0:...:aN] per line");
    analyze->add_option("--budget", aa.budget, "number of candidate frames the search tries")
        ->capture_default_str();
    analyze->add_option("--seed", aa.seed, "random seed for sampling and the frame search")
        ->envname("HMSTAB_SEED")
        ->capture_default_str();
    analyze->add_option("--emit-certificate", aa.cert_path,
                        "write the found destabilizing/boundary certificate to this file");

    std::string cert_file;
    auto* verify = app.add_subcommand("verify", "recompute a certificate's degree from scratch");
    verify->add_option("certificate", cert_file, "certificate JSON file")->required();

    std::string filter, corpus_file;
    auto* corpus = app.add_subcommand("corpus", "run the built-in corpus of classical examples");
    corpus->add_option("filter", filter, "only run entries whose name contains this substring");
    corpus->add_option("--file", corpus_file, "load entries from a JSON corpus file instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (analyze->parsed()) {
            if (s_opt->count() > 0) aa.user_s = user_s_raw;
            return cmd_analyze(aa);
        }
        if (verify->parsed()) return cmd_verify(cert_file);
        return cmd_corpus(filter, corpus_file);
    } catch (const hmstab::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const hmstab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const hmstab::Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
