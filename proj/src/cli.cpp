#include "chindex/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "chindex/checks.hpp"

namespace chindex {

namespace {

std::vector<u64> parse_list(const std::string& text, const std::string& flag) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + item + "' is not a non-negative integer");
        }
    }
    return out;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Residual-index computation of chi-indices of cyclotomic elements", "chindex"};
    std::string field_text, subgroup_text, char_text;
    u64 conductor = 0;
    auto* p_opt = app.add_option("--p", cfg.p, "odd prime p");
    auto* r_opt = app.add_option("--r", cfg.r, "odd twist r >= 3");
    auto* cond_opt = app.add_option("--conductor", conductor, "conductor f of the field");
    auto* sub_opt = app.add_option("--subgroup", subgroup_text, "generators of H in (Z/f)^x, comma separated");
    auto* field_opt = app.add_option("--field", field_text, "shorthand: Q or real-cyclotomic:f");
    app.add_option("--char", char_text, "character: all, or exponent vector e1,e2,...");
    app.add_option("--ell-bound", cfg.search.ell_bound, "largest prime ell to sample")->capture_default_str();
    app.add_option("--n-max", cfg.search.n_max, "largest level n")->capture_default_str();
    app.add_option("--primes-per-level", cfg.search.primes_per_level, "primes sampled per level")->capture_default_str();
    app.add_option("--window", cfg.search.window, "stabilization window in productive levels")->capture_default_str();
    app.add_option("--out", cfg.out_path, "write the JSON report to this path");
    app.add_flag("--json", cfg.json, "print the JSON report instead of the table");
    app.add_flag("--check", cfg.check, "run the property and oracle suites");
    app.add_flag("-v,--verbose", cfg.verbosity, "more output");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    if (cfg.check) return cfg;

    if (!*p_opt) throw UsageError("--p is required");
    if (cfg.p < 3 || !is_prime(cfg.p)) throw UsageError("p must be an odd prime");
    if (!*r_opt) throw UsageError("--r is required");
    if (cfg.r < 3 || cfg.r % 2 == 0) throw UsageError("r must be odd and at least 3");

    if (*field_opt && (*cond_opt || *sub_opt)) throw UsageError("--field conflicts with --conductor/--subgroup");
    if (*sub_opt && !*cond_opt) throw UsageError("--subgroup needs --conductor");
    if (*field_opt) {
        const std::string prefix = "real-cyclotomic:";
        if (field_text == "Q") {
            cfg.conductor = 1;
        } else if (field_text.rfind(prefix, 0) == 0) {
            const auto f = parse_list(field_text.substr(prefix.size()), "--field");
            if (f.size() != 1 || f[0] < 1) throw UsageError("--field real-cyclotomic:f needs one positive conductor");
            cfg.conductor = f[0];
            if (cfg.conductor > 2) cfg.subgroup = {cfg.conductor - 1};
        } else {
            throw UsageError("--field must be Q or real-cyclotomic:f, got '" + field_text + "'");
        }
    } else if (*cond_opt) {
        if (conductor == 0) throw UsageError("--conductor must be positive");
        cfg.conductor = conductor;
        cfg.subgroup = parse_list(subgroup_text, "--subgroup");
    } else {
        throw UsageError("specify the field with --field or --conductor");
    }

    if (!char_text.empty() && char_text != "all") cfg.character = parse_list(char_text, "--char");
    if (cfg.search.ell_bound < 3) throw UsageError("--ell-bound must be at least 3");
    if (cfg.search.primes_per_level == 0) throw UsageError("--primes-per-level must be at least 1");
    if (cfg.search.window == 0) throw UsageError("--window must be at least 1");

    try {
        const FieldSpec F = build_field(cfg);
        cfg.search.validate(F);
        select_classes(F, cfg);
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

FieldSpec build_field(const RunConfig& config) { return quotient_structure(config.conductor, config.subgroup, config.p); }

std::vector<CharacterClass> select_classes(const FieldSpec& F, const RunConfig& config) {
    auto classes = qp_conjugacy_classes(F.G(), enumerate_characters(F.G()), F.p);
    if (!config.character) return classes;
    const Character chi = make_character(F.G(), *config.character);
    for (const auto& cls : classes)
        if (std::find(cls.orbit.begin(), cls.orbit.end(), chi) != cls.orbit.end()) return {cls};
    throw UsageError("character not found");
}

nlohmann::ordered_json report_json(const FieldSpec& F, unsigned r, const std::vector<IndexReport>& reports) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["p"] = F.p;
    j["r"] = r;
    j["field"] = {{"conductor", F.conductor}, {"subgroup", F.subgroup}};
    ordered_json classes = ordered_json::array();
    for (const auto& rep : reports) {
        const Character& chi = rep.character_class.representative;
        ordered_json c;
        c["character"] = {{"order", chi.order}, {"exponents", chi.exponents}, {"qp_degree", rep.character_class.degree}};
        c["upper_bound_valuation"] = rep.upper_bound_valuation ? ordered_json(*rep.upper_bound_valuation) : ordered_json(nullptr);
        c["stabilized"] = rep.stabilized;
        c["witness"] = rep.witness ? ordered_json{{"ell", rep.witness->ell}, {"n", rep.witness->n}} : ordered_json(nullptr);
        ordered_json cands = ordered_json::array();
        for (const auto& rec : rep.candidates)
            cands.push_back({{"ell", rec.ell}, {"n", rec.n}, {"ire", rec.ire}, {"ima", rec.ima}, {"accepted", rec.accepted}});
        c["candidates"] = std::move(cands);
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return j;
}

std::string emit_report(const FieldSpec& F, unsigned r, const std::vector<IndexReport>& reports, ReportFormat format) {
    if (format == ReportFormat::Json) return report_json(F, r, reports).dump(2) + "\n";
    std::ostringstream os;
    os << "field: " << describe(F) << "\n";
    os << "p = " << F.p << ", r = " << r << "; valuations are exponents of p (" << kBoundSemantics << ")\n\n";
    os << std::left << std::setw(18) << "character" << std::setw(7) << "order" << std::setw(6) << "d_chi" << std::setw(8) << "bound"
       << std::setw(12) << "stabilized" << std::setw(20) << "witness (ell, n)"
       << "candidates\n";
    for (const auto& rep : reports) {
        const Character& chi = rep.character_class.representative;
        std::string exps = "(";
        for (std::size_t i = 0; i < chi.exponents.size(); ++i) exps += (i ? "," : "") + std::to_string(chi.exponents[i]);
        exps += ")";
        std::string witness = rep.witness ? "(" + std::to_string(rep.witness->ell) + ", " + std::to_string(rep.witness->n) + ")" : "-";
        os << std::setw(18) << exps << std::setw(7) << chi.order << std::setw(6) << rep.character_class.degree << std::setw(8)
           << (rep.upper_bound_valuation ? std::to_string(*rep.upper_bound_valuation) : "none") << std::setw(12)
           << (rep.stabilized ? "yes" : "no") << std::setw(20) << witness << rep.candidates.size() << "\n";
    }
    return os.str();
}

FieldSpec field_from_json(const nlohmann::json& block, u64 p) {
    return quotient_structure(block.at("conductor").get<u64>(), block.at("subgroup").get<std::vector<u64>>(), p);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return static_cast<int>(ExitCode::Usage);
    }
    if (cfg.help) {
        out << cfg.help_text;
        return static_cast<int>(ExitCode::Ok);
    }
    if (cfg.check) {
        bool ok = true;
        for (const auto& res : run_check_suite(CheckOptions{})) {
            out << format_check(res) << "\n";
            if (res.gating && !res.passed) ok = false;
        }
        return static_cast<int>(ok ? ExitCode::Ok : ExitCode::CheckFailure);
    }
    try {
        const FieldSpec F = build_field(cfg);
        const auto reports = full_run(F, cfg.r, cfg.search, select_classes(F, cfg));
        out << emit_report(F, cfg.r, reports, cfg.json ? ReportFormat::Json : ReportFormat::Table);
        if (!cfg.out_path.empty()) {
            std::ofstream file(cfg.out_path, std::ios::binary);
            file << emit_report(F, cfg.r, reports, ReportFormat::Json);
            if (!file.good()) {
                err << "error: cannot write report to '" << cfg.out_path << "'\n";
                return static_cast<int>(ExitCode::Computation);
            }
        }
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Computation);
    }
    return static_cast<int>(ExitCode::Ok);
}

}  // namespace chindex
