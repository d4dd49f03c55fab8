#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chindex/search.hpp"
#include "json.hpp"

namespace chindex {

/// Invalid or conflicting command-line input (exit code 1).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ExitCode : int { Ok = 0, Usage = 1, Computation = 2, CheckFailure = 3 };

struct RunConfig {
    u64 p = 0;
    unsigned r = 0;
    u64 conductor = 1;
    std::vector<u64> subgroup;
    /// Selected character exponents; empty means all classes.
    std::optional<std::vector<u64>> character;
    SearchConfig search;
    std::string out_path;
    bool json = false;
    bool check = false;
    bool help = false;
    int verbosity = 0;
    std::string help_text;
};

/// Parse and validate the command line; throws UsageError.
RunConfig parse_args(int argc, const char* const* argv);

FieldSpec build_field(const RunConfig& config);

/// Classes to evaluate: all of them, or the one containing the selected character.
std::vector<CharacterClass> select_classes(const FieldSpec& F, const RunConfig& config);

nlohmann::ordered_json report_json(const FieldSpec& F, unsigned r, const std::vector<IndexReport>& reports);

enum class ReportFormat { Json, Table };

std::string emit_report(const FieldSpec& F, unsigned r, const std::vector<IndexReport>& reports, ReportFormat format);

/// Rebuild the field from an emitted "field" block.
FieldSpec field_from_json(const nlohmann::json& block, u64 p);

/// Full command-line driver; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chindex
