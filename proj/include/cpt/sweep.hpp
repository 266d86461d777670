// Command implementations behind the cpt-shift front end. Each command
// turns a resolved configuration into a CSV table.

#ifndef CPT_SWEEP_HPP
#define CPT_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include <cpt/config.hpp>
#include <cpt/csv.hpp>
#include <cpt/error.hpp>
#include <cpt/model.hpp>
#include <cpt/observables.hpp>

namespace cpt {

enum class Command
{
    Spectrum,
    ShiftMap,
    RatioMap,
    ShiftVsX,
    Validate
};

const char* to_string(Command command);
/// Throws Error(Config) for an unknown name.
Command parse_command(const std::string& name);

const char* version();

struct RunConfig
{
    Command command = Command::Spectrum;
    Config values;
    /// --path override; takes precedence over the `path` key.
    std::optional<SolverPath> path;
};

/// Preset keys first, then the config file on top. A preset whose
/// `command` differs from `command` is a config error.
RunConfig make_run_config(Command command, const std::optional<std::string>& preset_name,
                          const std::optional<std::string>& config_path,
                          const std::optional<std::string>& path);

/// Model keys: gamma_opt, gamma_exc, gamma_12, omega_34, gamma_31..gamma_42,
/// and either rabi_1, rabi_2 or x, ratio. Validation failures are config
/// errors.
ModelParams model_from_config(const Config& cfg, double p_1, double p_2);

struct RunResult
{
    CsvTable table;
    /// Invariant violations found while producing the table.
    std::vector<std::string> violations;
};

RunResult run_spectrum(const RunConfig& rc);
RunResult run_shift_map(const RunConfig& rc);
RunResult run_ratio_map(const RunConfig& rc);
RunResult run_shift_vs_x(const RunConfig& rc);

/// Dispatches on rc.command; Validate is handled by the validation suite.
RunResult run(const RunConfig& rc);

/// Process exit code for an error: 2 for configuration and I/O problems,
/// 3 for numerical failures.
int exit_code(ErrorKind kind);

}

#endif
