#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qs2 {

// Box of basis indices used by the exhaustive checks: i <= max_i, |j| <= max_j.
struct Truncation {
    int max_i = 3;
    int max_j = 3;
};

// QS2_TRUNCATION="I,J" when set and well formed, else `fallback`.
Truncation truncation_from_env(Truncation fallback = {});
// "I,J"; throws ParseError otherwise.
Truncation parse_truncation(const std::string& text);

enum class CheckStatus { pass, bounded_pass, pass_with_notes, fail };

std::string status_name(CheckStatus s);

struct CheckResult {
    std::string name;      // "C1" .. "C15"
    std::string identity;  // what is being checked
    CheckStatus status = CheckStatus::fail;
    std::optional<std::string> witness;
    std::vector<std::string> notes;
    double runtime_ms = 0;

    bool ok() const { return status != CheckStatus::fail; }
};

// All check names in suite order.
const std::vector<std::string>& check_names();

// One-line statement of the identity a check verifies. Throws ContractError
// for an unknown name.
const std::string& check_identity(const std::string& name);

/**
 * Runs the selected checks (in suite order, duplicates dropped). An empty
 * selection runs nothing; throws ContractError for an unknown name.
 * bounded_pass marks claims verified only on the truncation box.
 */
std::vector<CheckResult> run_suite(const std::vector<std::string>& selection, Truncation t = {});

// "all" or a comma separated list of check names.
std::vector<std::string> parse_selection(const std::string& text);

enum class ReportFormat { markdown, json };

// Deterministic unless include_timing is set.
std::string emit_report(const std::vector<CheckResult>& results, ReportFormat format, Truncation t,
                        bool include_timing = false);

bool all_ok(const std::vector<CheckResult>& results);

} // namespace qs2
