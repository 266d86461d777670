#include <cpt/sweep.hpp>

#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include <cpt/parallel.hpp>
#include <cpt/presets.hpp>
#include <cpt/shift.hpp>
#include <cpt/steady_state.hpp>
#include <cpt/weak_coupling.hpp>

#ifndef CPT_SHIFT_VERSION
#define CPT_SHIFT_VERSION "dev"
#endif

namespace cpt {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> model_keys = {
    "command", "path", "gamma_opt", "gamma_exc", "gamma_12", "omega_34",
    "gamma_31", "gamma_32", "gamma_41", "gamma_42"};

std::set<std::string> keys_with(std::initializer_list<const char*> extra)
{
    std::set<std::string> keys = model_keys;
    keys.insert(extra.begin(), extra.end());
    return keys;
}

SolverPath effective_path(const RunConfig& rc, SolverPath fallback)
{
    if (rc.path)
        return *rc.path;
    return rc.values.has("path") ? parse_solver_path(rc.values.get_string("path")) : fallback;
}

void require_rational(const RunConfig& rc)
{
    if (effective_path(rc, SolverPath::Rational) != SolverPath::Rational)
        throw Error(ErrorKind::Config,
                    std::string(to_string(rc.command)) + " extracts delta_0 from the rational chi''; path must be rational");
}

double positive(const Config& cfg, const std::string& key)
{
    const double v = cfg.get_double(key);
    if (!(v > 0.0))
        throw Error(ErrorKind::Config, key + " must be positive");
    return v;
}

std::vector<double> positive_grid(const Config& cfg, const std::string& key)
{
    auto grid = cfg.get_grid(key);
    require_monotone(key, grid);
    for (double v : grid)
        if (!(v > 0.0))
            throw Error(ErrorKind::Config, key + " values must be positive");
    return grid;
}

void add_common_provenance(CsvTable& table, const RunConfig& rc, const std::string& path)
{
    table.add_provenance("cpt-shift", version());
    table.add_provenance("command", to_string(rc.command));
    table.add_provenance("path", path);
    for (const auto& [k, v] : rc.values.values())
        if (k != "command" && k != "path")
            table.add_provenance("param " + k, v);
}

// Shape without drive for the map commands; the drive comes from x, ratio.
ModelParams shape_from_config(const Config& cfg, double p_1, double p_2)
{
    Config c = cfg;
    c.set("x", "1e-4");
    c.set("ratio", "1");
    return model_from_config(c, p_1, p_2);
}

std::string status_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ResonanceAbsent:
    case ErrorKind::NoRealRootInWindow:
    case ErrorKind::NoZeroInWindow:
    case ErrorKind::NoExtremum:
        return "resonance-absent";
    case ErrorKind::FitIllConditioned:
    case ErrorKind::PolynomialIllConditioned:
        return "ill-conditioned";
    default:
        return {};
    }
}

}

const char* to_string(Command command)
{
    switch (command) {
    case Command::Spectrum: return "spectrum";
    case Command::ShiftMap: return "shift-map";
    case Command::RatioMap: return "ratio-map";
    case Command::ShiftVsX: return "shift-vs-x";
    case Command::Validate: return "validate";
    }
    return "?";
}

Command parse_command(const std::string& name)
{
    for (Command c : {Command::Spectrum, Command::ShiftMap, Command::RatioMap,
                      Command::ShiftVsX, Command::Validate})
        if (name == to_string(c))
            return c;
    throw Error(ErrorKind::Config, "unknown command '" + name + "'");
}

const char* version() { return CPT_SHIFT_VERSION; }

RunConfig make_run_config(Command command, const std::optional<std::string>& preset_name,
                          const std::optional<std::string>& config_path,
                          const std::optional<std::string>& path)
{
    RunConfig rc;
    rc.command = command;
    if (preset_name)
        rc.values = preset(*preset_name);
    if (config_path)
        rc.values.merge(Config::load(*config_path));
    if (rc.values.has("command") && parse_command(rc.values.get_string("command")) != command)
        throw Error(ErrorKind::Config, "configuration is for '" + rc.values.get_string("command") +
                                           "', not '" + to_string(command) + "'");
    if (path)
        rc.path = parse_solver_path(*path);
    return rc;
}

ModelParams model_from_config(const Config& cfg, double p_1, double p_2)
{
    const bool rabi = cfg.has("rabi_1") || cfg.has("rabi_2");
    const bool shape = cfg.has("x") || cfg.has("ratio");
    if (rabi == shape)
        throw Error(ErrorKind::Config, "give the drive as rabi_1, rabi_2 or as x, ratio");

    const double gamma_exc = cfg.get_double("gamma_exc", 2.0);
    const double gamma_opt = cfg.get_double("gamma_opt", 1.0);
    const double gamma_12 = cfg.get_double("gamma_12", 0.0);
    const double omega_34 = cfg.get_double("omega_34");
    ModelParams p;
    try {
        // Placeholder drive; replaced below.
        p = uniform_preset(gamma_exc, gamma_opt, gamma_12, omega_34, 0.01, 0.01, p_1, p_2);
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, std::string("invalid parameters: ") + e.what());
    }
    p.branching.gamma_31 = cfg.get_double("gamma_31", p.branching.gamma_31);
    p.branching.gamma_32 = cfg.get_double("gamma_32", p.branching.gamma_32);
    p.branching.gamma_41 = cfg.get_double("gamma_41", p.branching.gamma_41);
    p.branching.gamma_42 = cfg.get_double("gamma_42", p.branching.gamma_42);
    if (rabi) {
        p.rabi_1 = cfg.get_double("rabi_1");
        p.rabi_2 = cfg.get_double("rabi_2");
    } else {
        p = p.with_drive(positive(cfg, "x"), positive(cfg, "ratio"));
    }
    const auto report = validate(p);
    if (!report.ok())
        throw Error(ErrorKind::Config, "invalid parameters:\n" + report.summary());
    return p;
}

RunResult run_spectrum(const RunConfig& rc)
{
    const Config& cfg = rc.values;
    cfg.require_known(keys_with({"p_1", "p_2", "rabi_1", "rabi_2", "x", "ratio", "delta",
                                 "delta_gd", "delta_common", "sweep_omega_34", "weak_columns"}));
    const SolverPath path = effective_path(rc, SolverPath::Exact);
    if (cfg.has("delta") == cfg.has("delta_gd"))
        throw Error(ErrorKind::Config, "give exactly one of delta (Gamma units) or delta_gd (gamma_D units)");
    if (cfg.has("omega_34") == cfg.has("sweep_omega_34"))
        throw Error(ErrorKind::Config, "give exactly one of omega_34 or sweep_omega_34");
    const bool weak = cfg.get_bool("weak_columns", false);
    const double delta_common = cfg.get_double("delta_common", 0.0);

    const std::vector<double> omegas =
        cfg.has("sweep_omega_34") ? cfg.get_grid("sweep_omega_34")
                                  : std::vector<double>{cfg.get_double("omega_34")};
    const std::string grid_key = cfg.has("delta") ? "delta" : "delta_gd";
    const std::vector<double> grid = cfg.get_grid(grid_key);
    if (grid.size() > 1)
        require_monotone(grid_key, grid);
    if (grid.size() > 1 && grid.front() > grid.back())
        throw Error(ErrorKind::Config, grid_key + ": grid must be increasing");

    std::vector<std::string> columns = {"omega_34", "delta", "delta_over_gamma_d", "rho12_re",
                                        "rho12_im", "chi1_im", "chi2_im", "rho_exc", "rho11", "rho22"};
    std::vector<std::string> units = {"Gamma", "Gamma", "gamma_D", "1", "1", "1/Gamma",
                                      "1/Gamma", "1", "1", "1"};
    if (weak) {
        columns.insert(columns.end(), {"rho12_weak_re", "rho12_weak_im"});
        units.insert(units.end(), {"1", "1"});
    }
    RunResult result{CsvTable(columns, units), {}};
    add_common_provenance(result.table, rc, to_string(path));
    result.table.add_provenance("chi sign", "chi'' >= 0, the CPT feature is a minimum");

    for (double w : omegas) {
        Config c = cfg;
        c.set("omega_34", format_double(w));
        const ModelParams p = model_from_config(c, cfg.get_double("p_1"), cfg.get_double("p_2"));
        const double gd = gamma_d(p);
        std::vector<double> deltas = grid;
        if (grid_key == "delta_gd")
            for (double& d : deltas)
                d *= gd;

        Spectrum s;
        try {
            s = spectrum(p, deltas, path, delta_common);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InvalidParams)
                throw Error(ErrorKind::Config, e.what());
            throw;
        }
        result.table.add_provenance(fmt::format("state path omega_34={}", format_double(w)),
                                    to_string(s.state_path));
        if (delta_common == 0.0)
            result.table.add_provenance(fmt::format("contrast omega_34={}", format_double(w)),
                                        format_double(contrast(p)));

        for (const auto& pt : s.points) {
            std::vector<CsvCell> row = {w, pt.delta, pt.delta / gd, pt.rho12_re, pt.rho12_im,
                                        pt.chi1_im, pt.chi2_im, pt.rho_exc, pt.rho11, pt.rho22};
            if (weak) {
                const Complex r = rho12_weak(p, pt.delta);
                row.insert(row.end(), {r.real(), r.imag()});
            }
            result.table.add_row(std::move(row));

            if (path == SolverPath::Exact && p.rabi_1 != 0.0 && p.rabi_2 != 0.0) {
                const double from_chi =
                    2.0 / p.gamma_exc * (p.rabi_1 * p.rabi_1 * pt.chi1_im + p.rabi_2 * p.rabi_2 * pt.chi2_im);
                if (std::abs(pt.rho_exc - from_chi) > 1e-10)
                    result.violations.push_back(fmt::format(
                        "rho_exc identity off by {:.3g} at omega_34={} delta={}",
                        std::abs(pt.rho_exc - from_chi), w, pt.delta));
            }
        }
    }
    return result;
}

RunResult run_shift_map(const RunConfig& rc)
{
    const Config& cfg = rc.values;
    cfg.require_known(keys_with({"p_1", "p_2", "rabi_1", "rabi_2", "x", "ratio"}));
    const SolverPath path = effective_path(rc, SolverPath::Rational);
    const auto p1s = cfg.get_grid("p_1");
    const auto p2s = cfg.get_grid("p_2");
    require_monotone("p_1", p1s);
    require_monotone("p_2", p2s);

    std::vector<ModelParams> cells;
    for (double p1 : p1s)
        for (double p2 : p2s)
            cells.push_back(model_from_config(cfg, p1, p2));

    std::vector<double> delta0(cells.size(), nan);
    std::vector<std::string> method(cells.size());
    std::vector<std::string> status(cells.size(), "ok");
    parallel_for(cells.size(), [&](std::size_t i) {
        try {
            const ExtremumReport r = path == SolverPath::Rational
                                         ? chi_extremum_polynomial(cells[i])
                                         : shift_from_rho12(cells[i], path);
            delta0[i] = r.delta0;
            method[i] = r.method;
        } catch (const Error& e) {
            status[i] = status_for(e.kind());
            if (status[i].empty())
                throw;
        }
    });

    RunResult result{CsvTable({"p_1", "p_2", "delta0", "gamma_d", "delta0_over_gamma_d",
                               "delta_ac_plus_delta_d", "method", "status"},
                              {"1", "1", "Gamma", "Gamma", "gamma_D", "Gamma", "-", "-"}),
                     {}};
    add_common_provenance(result.table, rc, to_string(path));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ModelParams& p = cells[i];
        const double gd = gamma_d(p);
        result.table.add_row({p.p_1, p.p_2, delta0[i], gd, delta0[i] / gd,
                              stark_shift(p) + distortion_shift(p), method[i], status[i]});
    }
    return result;
}

RunResult run_ratio_map(const RunConfig& rc)
{
    const Config& cfg = rc.values;
    cfg.require_known(keys_with({"p_1", "p_2", "ratio", "x_grid"}));
    require_rational(rc);
    const double ratio = positive(cfg, "ratio");
    const auto p1s = cfg.get_grid("p_1");
    const auto p2s = cfg.get_grid("p_2");
    require_monotone("p_1", p1s);
    require_monotone("p_2", p2s);
    const auto xs = cfg.has("x_grid") ? positive_grid(cfg, "x_grid") : default_x_grid();
    if (xs.size() < 4)
        throw Error(ErrorKind::Config, "x_grid needs at least 4 points");

    std::vector<ModelParams> cells;
    for (double p1 : p1s)
        for (double p2 : p2s)
            cells.push_back(shape_from_config(cfg, p1, p2));

    std::vector<SeriesCoeffs> series(cells.size());
    std::vector<std::string> status(cells.size(), "ok");
    parallel_for(cells.size(), [&](std::size_t i) {
        try {
            series[i] = series_coefficients(cells[i], ratio, xs);
        } catch (const Error& e) {
            status[i] = status_for(e.kind());
            if (status[i].empty())
                throw;
        }
    });

    RunResult result{CsvTable({"p_1", "p_2", "alpha1", "alpha2", "alpha2_over_alpha1",
                               "relative_residual", "ratio_source", "status"},
                              {"1", "1", "Gamma", "Gamma", "1", "1", "-", "-"}),
                     {}};
    add_common_provenance(result.table, rc, "rational");
    std::string grid;
    for (double x : xs)
        grid += (grid.empty() ? "" : ", ") + format_double(x);
    result.table.add_provenance("x grid", grid);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const bool ok = status[i] == "ok";
        const SeriesCoeffs& s = series[i];
        result.table.add_row({cells[i].p_1, cells[i].p_2, ok ? s.alpha1 : nan, ok ? s.alpha2 : nan,
                              ok ? s.ratio : nan, ok ? s.relative_residual : nan,
                              std::string(!ok ? "-" : s.ratio_from_limit ? "limit" : "fit"), status[i]});
    }
    return result;
}

RunResult run_shift_vs_x(const RunConfig& rc)
{
    const Config& cfg = rc.values;
    cfg.require_known(keys_with({"p_1", "p_2", "ratio", "ratios", "x_grid"}));
    require_rational(rc);
    if (cfg.has("ratio") == cfg.has("ratios"))
        throw Error(ErrorKind::Config, "give exactly one of ratio or ratios");
    const auto ratios = cfg.has("ratios") ? positive_grid(cfg, "ratios")
                                          : std::vector<double>{positive(cfg, "ratio")};
    const auto xs = positive_grid(cfg, "x_grid");
    const ModelParams shape = shape_from_config(cfg, cfg.get_double("p_1"), cfg.get_double("p_2"));

    RunResult result{CsvTable({"ratio", "x", "S", "delta0", "extremum", "status"},
                              {"1", "1", "Gamma", "Gamma", "-", "-"}),
                     {}};
    add_common_provenance(result.table, rc, "rational");
    for (double ratio : ratios) {
        try {
            const IntensityCurve c = shift_vs_intensity(shape, ratio, xs);
            for (std::size_t i = 0; i < xs.size(); ++i)
                result.table.add_row({ratio, xs[i], c.s[i], c.delta0[i],
                                      std::string(c.extremum[i] ? "1" : "0"), std::string("ok")});
        } catch (const Error& e) {
            const std::string status = status_for(e.kind());
            if (status.empty())
                throw;
            for (double x : xs)
                result.table.add_row({ratio, x, nan, nan, std::string("0"), status});
        }
    }
    return result;
}

RunResult run(const RunConfig& rc)
{
    switch (rc.command) {
    case Command::Spectrum: return run_spectrum(rc);
    case Command::ShiftMap: return run_shift_map(rc);
    case Command::RatioMap: return run_ratio_map(rc);
    case Command::ShiftVsX: return run_shift_vs_x(rc);
    case Command::Validate: break;
    }
    throw Error(ErrorKind::Config, "validate is not a table command");
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Io:
    case ErrorKind::InvalidParams:
    case ErrorKind::Unsupported:
    case ErrorKind::ZeroDrive:
        return 2;
    default:
        return 3;
    }
}

}
