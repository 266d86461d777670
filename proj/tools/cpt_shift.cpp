// cpt-shift: spectra, shift maps and validation for the double-Lambda
// CPT light-shift model.
//
// Exit codes: 0 ok, 1 invariant failure, 2 config error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cpt/error.hpp>
#include <cpt/presets.hpp>
#include <cpt/sweep.hpp>
#include <cpt/validation.hpp>

namespace {

void write_output(const cpt::CsvTable& table, const std::string& out)
{
    if (out.empty()) {
        table.write(std::cout);
        return;
    }
    std::ofstream file(out);
    if (!file)
        throw cpt::Error(cpt::ErrorKind::Io, "cannot write '" + out + "'");
    table.write(file);
    if (!file)
        throw cpt::Error(cpt::ErrorKind::Io, "write to '" + out + "' failed");
}

int run_validate(const std::vector<std::string>& ids, const std::string& mutate, bool list,
                 const std::string& out)
{
    const auto checks = cpt::select_checks(ids);
    if (list) {
        for (const auto* c : checks)
            std::cout << c->id << (c->criterion > 0 ? " [criterion " + std::to_string(c->criterion) + "]" : "")
                      << ": " << c->description << '\n';
        return 0;
    }
    cpt::ValidationContext ctx;
    ctx.mutation = cpt::parse_mutation(mutate);
    if (ctx.mutation != cpt::Mutation::None)
        std::cout << "mutation active: " << cpt::to_string(ctx.mutation) << '\n';

    std::vector<cpt::CheckOutcome> outcomes;
    int failed = 0;
    for (const auto* c : checks) {
        outcomes.push_back(cpt::run_check(*c, ctx));
        const auto& o = outcomes.back();
        std::cout << cpt::verdict_line(o) << '\n';
        for (const auto& line : o.result.lines)
            std::cout << "    " << line << '\n';
        std::cout.flush();
        failed += o.passed() ? 0 : 1;
    }
    std::cout << outcomes.size() - failed << " passed, " << failed << " failed\n";
    if (!out.empty()) {
        auto report = cpt::validation_report(outcomes, ctx.mutation);
        report.add_provenance("version", cpt::version());
        write_output(report, out);
    }
    return failed == 0 ? 0 : 1;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"CPT resonance light-shift model: spectra, shift maps and validation"};
    std::string command;
    std::string config;
    std::string out;
    std::string path;
    std::string preset;
    std::string mutate = "none";
    std::vector<std::string> checks;
    bool list = false;

    std::string preset_help = "figure preset:";
    for (const auto& n : cpt::preset_names())
        preset_help += " " + n;

    app.add_option("command", command, "spectrum | shift-map | ratio-map | shift-vs-x | validate")
        ->required();
    app.add_option("--config", config, "key = value configuration file");
    app.add_option("--out", out, "output CSV (default: stdout)");
    app.add_option("--path", path, "solver path: exact | adiabatic | rational");
    app.add_option("--preset", preset, preset_help);
    app.add_flag("--list", list, "validate: list the checks without running them");
    app.add_option("--mutate", mutate, "validate: fault injection (none | delta_d_sign)");
    app.add_option("--check", checks, "validate: run only these check ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const cpt::Command cmd = cpt::parse_command(command);
        if (cmd == cpt::Command::Validate) {
            if (!config.empty()) {
                const auto cfg = cpt::Config::load(config);
                cfg.require_known({"checks", "mutate"});
                if (checks.empty() && cfg.has("checks")) {
                    std::string item;
                    std::istringstream in(cfg.get_string("checks"));
                    while (std::getline(in, item, ','))
                        checks.push_back(item.substr(item.find_first_not_of(' ')));
                }
                if (mutate == "none")
                    mutate = cfg.get_string("mutate", "none");
            }
            return run_validate(checks, mutate, list, out);
        }
        if (config.empty() && preset.empty())
            throw cpt::Error(cpt::ErrorKind::Config, "need --config or --preset");
        const auto rc = cpt::make_run_config(
            cmd, preset.empty() ? std::nullopt : std::optional<std::string>(preset),
            config.empty() ? std::nullopt : std::optional<std::string>(config),
            path.empty() ? std::nullopt : std::optional<std::string>(path));
        const auto result = cpt::run(rc);
        write_output(result.table, out);
        for (const auto& v : result.violations)
            std::cerr << "invariant violated: " << v << '\n';
        return result.violations.empty() ? 0 : 1;
    } catch (const cpt::Error& e) {
        std::cerr << "cpt-shift: " << e.what() << '\n';
        return cpt::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "cpt-shift: " << e.what() << '\n';
        return 3;
    }
}
