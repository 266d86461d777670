// Registry of acceptance criteria and invariant checks run by
// `cpt-shift validate` and by the acceptance test binary.

#ifndef CPT_VALIDATION_HPP
#define CPT_VALIDATION_HPP

#include <functional>
#include <string>
#include <vector>

#include <cpt/csv.hpp>
#include <cpt/model.hpp>

namespace cpt {

/// Fault injection for checking that the suite notices broken physics.
enum class Mutation
{
    None,
    /// Flips the sign of the closed-form distortion shift delta_D.
    DeltaDSign
};

const char* to_string(Mutation m);
/// "none" or "delta_d_sign"; throws Error(Config) otherwise.
Mutation parse_mutation(const std::string& name);

struct ValidationContext
{
    Mutation mutation = Mutation::None;

    /// Closed-form delta_D as seen by the checks.
    double delta_d(const ModelParams& params) const;
};

struct CheckResult
{
    bool passed = false;
    double metric = 0.0;
    double tolerance = 0.0;
    std::string detail;
    /// Extra diagnostic lines, printed after the verdict.
    std::vector<std::string> lines;
};

struct Check
{
    std::string id;
    /// Acceptance criterion number, 0 for invariant checks.
    int criterion = 0;
    std::string description;
    double budget_seconds = 60.0;
    std::function<CheckResult(const ValidationContext&)> run;
};

const std::vector<Check>& check_registry();

/// Checks with the given ids, in registry order; all checks when `ids` is
/// empty. Throws Error(Config) for an unknown id.
std::vector<const Check*> select_checks(const std::vector<std::string>& ids);

struct CheckOutcome
{
    const Check* check = nullptr;
    CheckResult result;
    double seconds = 0.0;
    bool over_budget = false;

    bool passed() const { return result.passed && !over_budget; }
};

/// Runs one check; exceptions become failures carrying the message, and a
/// run longer than the budget fails.
CheckOutcome run_check(const Check& check, const ValidationContext& ctx);

/// "PASS|FAIL <id>: <description> (<detail>)"
std::string verdict_line(const CheckOutcome& outcome);

CsvTable validation_report(const std::vector<CheckOutcome>& outcomes, Mutation mutation);

}

#endif
