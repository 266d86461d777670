#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include <cpt/config.hpp>
#include <cpt/csv.hpp>
#include <cpt/error.hpp>
#include <cpt/presets.hpp>
#include <cpt/sweep.hpp>
#include <cpt/weak_coupling.hpp>

using namespace cpt;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Io;
}

RunConfig config_for(Command command, const std::string& preset_name, const std::string& overrides)
{
    RunConfig rc;
    rc.command = command;
    rc.values = preset(preset_name);
    rc.values.merge(Config::parse(overrides));
    return rc;
}

double cell(const CsvTable& t, std::size_t row, const std::string& column)
{
    return std::get<double>(t.rows().at(row).at(t.column(column)));
}

std::string text(const CsvTable& t, std::size_t row, const std::string& column)
{
    return std::get<std::string>(t.rows().at(row).at(t.column(column)));
}

}

TEST_CASE("grid parsing")
{
    CHECK(parse_grid("0.5, 1, 2") == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(parse_grid("3") == std::vector<double>{3.0});
    const auto lin = parse_grid("lin:-1:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[1] == doctest::Approx(-0.5));
    CHECK(lin[4] == 1.0);
    const auto log = parse_grid("log:1e-4:1e-2:3");
    CHECK(log[1] == doctest::Approx(1e-3));
    CHECK(parse_grid("lin:2:2:1") == std::vector<double>{2.0});
    for (const char* bad : {"", "1,,2", "lin:0:1", "lin:0:1:0", "lin:0:1:2.5", "log:-1:1:3", "abc", "1, nan"})
        CHECK(kind_of([&] { parse_grid(bad); }) == ErrorKind::Config);
    CHECK_NOTHROW(require_monotone("g", {3.0, 2.0, 1.0}));
    CHECK(kind_of([] { require_monotone("g", {1.0, 1.0}); }) == ErrorKind::Config);
}

TEST_CASE("config parsing")
{
    const Config c = Config::parse("# comment\nomega_34 = 10  # trailing\n\np_1=1\nname = a b\n");
    CHECK(c.get_double("omega_34") == 10.0);
    CHECK(c.get_double("p_1") == 1.0);
    CHECK(c.get_string("name") == "a b");
    CHECK(c.get_double("missing", 4.0) == 4.0);
    CHECK(kind_of([&] { c.get_double("missing"); }) == ErrorKind::Config);
    CHECK(kind_of([&] { c.get_double("name"); }) == ErrorKind::Config);
    CHECK(kind_of([] { Config::parse("a = 1\na = 2\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { Config::parse("just text\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { Config::parse("a =\n"); }) == ErrorKind::Config);
    CHECK(kind_of([&] { c.require_known({"omega_34"}); }) == ErrorKind::Config);
    CHECK(kind_of([] { Config::load("/nonexistent/cfg"); }) == ErrorKind::Io);
    CHECK(Config::parse("w = true").get_bool("w", false));
    CHECK(kind_of([] { Config::parse("w = maybe").get_bool("w", false); }) == ErrorKind::Config);

    Config base = Config::parse("a = 1\nb = 2");
    base.merge(Config::parse("b = 3"));
    CHECK(base.get_double("b") == 3.0);
}

TEST_CASE("csv output")
{
    CsvTable t({"x", "label"}, {"Gamma", "-"});
    t.add_provenance("cpt-shift", "1.0.0");
    t.add_row({0.1, std::string("a")});
    t.add_row({1.0 / 3.0, std::string("b")});
    CHECK(t.str() == "# cpt-shift: 1.0.0\nx,label\nGamma,-\n0.10000000000000001,a\n0.33333333333333331,b\n");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(kind_of([&] { t.add_row({1.0}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { CsvTable({"a"}, {}); }) == ErrorKind::InvalidParams);
    CHECK(t.column("label") == 1);
}

TEST_CASE("presets and run configuration")
{
    const std::set<std::string> expected = {"fig2", "fig3", "fig4a", "fig4b", "fig5",
                                            "fig6a", "fig6b", "fig7a", "fig7b"};
    const auto names = preset_names();
    CHECK(std::set<std::string>(names.begin(), names.end()) == expected);
    for (const auto& n : names)
        CHECK_NOTHROW(parse_command(preset(n).get_string("command")));
    CHECK(kind_of([] { preset("fig8"); }) == ErrorKind::Config);
    CHECK(kind_of([] { make_run_config(Command::Spectrum, "fig3", std::nullopt, std::nullopt); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { make_run_config(Command::Spectrum, "fig2", std::nullopt, "fast"); }) ==
          ErrorKind::Config);
    const auto rc = make_run_config(Command::Spectrum, "fig2", std::nullopt, "adiabatic");
    CHECK(rc.path == SolverPath::Adiabatic);
    CHECK(parse_command("shift-vs-x") == Command::ShiftVsX);
    CHECK(kind_of([] { parse_command("plot"); }) == ErrorKind::Config);
}

TEST_CASE("model keys")
{
    const Config shape = Config::parse("omega_34 = 10\nx = 1e-4\nratio = 9");
    const ModelParams p = model_from_config(shape, 1.0, -1.0);
    CHECK(p.drive_power() == doctest::Approx(1e-4));
    CHECK(p.rabi_1 == doctest::Approx(3.0 * p.rabi_2));

    const ModelParams q = model_from_config(Config::parse("omega_34 = 5\nrabi_1 = 0.01\nrabi_2 = 0.02\ngamma_12 = 1e-6"), 0.5, 0.5);
    CHECK(q.rabi_2 == 0.02);
    CHECK(q.gamma_12 == 1e-6);

    CHECK(kind_of([] { model_from_config(Config::parse("omega_34 = 1\nx = 1e-4\nratio = 1\nrabi_1 = 0.1"), 1, 1); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { model_from_config(Config::parse("omega_34 = 1"), 1, 1); }) == ErrorKind::Config);
    CHECK(kind_of([] { model_from_config(Config::parse("omega_34 = 1\nx = -1\nratio = 1"), 1, 1); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { model_from_config(Config::parse("omega_34 = 1\nx = 1e-4\nratio = 1\ngamma_opt = 0.5"), 1, 1); }) ==
          ErrorKind::Config);
}

TEST_CASE("spectrum command")
{
    const RunResult r = run_spectrum(config_for(Command::Spectrum, "fig2", ""));
    CHECK(r.violations.empty());
    const CsvTable& t = r.table;
    CHECK(t.rows().size() == 401);
    CHECK(t.columns().size() == 12);
    bool bracketed = false;
    for (std::size_t i = 0; i + 1 < t.rows().size(); ++i) {
        const double a = cell(t, i, "rho12_im");
        const double b = cell(t, i + 1, "rho12_im");
        if (a * b <= 0.0 && a != b) {
            bracketed = cell(t, i, "delta") <= 1.584e-5 && cell(t, i + 1, "delta") >= 1.584e-5;
            break;
        }
    }
    CHECK(bracketed);
    CHECK(t.str() == run_spectrum(config_for(Command::Spectrum, "fig2", "")).table.str());
    CHECK(t.str().find("# cpt-shift: " + std::string(version())) == 0);

    const auto one = run_spectrum(config_for(Command::Spectrum, "fig2", "delta_gd = 0.5"));
    CHECK(one.table.rows().size() == 1);

    const auto rational = run_spectrum(config_for(Command::Spectrum, "fig2", "path = rational\ndelta_gd = lin:-1:1:5"));
    CHECK(rational.table.str().find("state path omega_34=10: adiabatic") != std::string::npos);

    CHECK(kind_of([] { run_spectrum(config_for(Command::Spectrum, "fig2", "delta_gd = 1, 0")); }) == ErrorKind::Config);
    CHECK(kind_of([] { run_spectrum(config_for(Command::Spectrum, "fig2", "delta = 0")); }) == ErrorKind::Config);
    CHECK(kind_of([] { run_spectrum(config_for(Command::Spectrum, "fig2", "speed = 3")); }) == ErrorKind::Config);
}

TEST_CASE("spectrum family shows the contrast collapse")
{
    auto rc = config_for(Command::Spectrum, "fig4b", "delta_gd = 0");
    const std::string out = run_spectrum(rc).table.str();
    auto contrast_at = [&](const std::string& w) {
        const std::string key = "# contrast omega_34=" + w + ": ";
        const auto pos = out.find(key);
        REQUIRE(pos != std::string::npos);
        return std::stod(out.substr(pos + key.size()));
    };
    const double c10 = contrast_at("10");
    const double c1 = contrast_at("1");
    const double c05 = contrast_at("0.5");
    const double c01 = contrast_at("0.10000000000000001");
    CHECK(c10 > 0.1);
    CHECK(c10 >= c1);
    CHECK(c1 >= c05);
    CHECK(c05 >= c01);
    CHECK(c01 < 1e-3);
}

TEST_CASE("shift-map command")
{
    SUBCASE("strong coupling row crosses zero at p2 = p1")
    {
        const auto t = run_shift_map(config_for(Command::ShiftMap, "fig5", "p_1 = 1\np_2 = 0.5, 1, 2")).table;
        REQUIRE(t.rows().size() == 3);
        CHECK(cell(t, 0, "delta0_over_gamma_d") > 0.0);
        CHECK(std::abs(cell(t, 1, "delta0_over_gamma_d")) <= 1e-3);
        CHECK(cell(t, 2, "delta0_over_gamma_d") < 0.0);
        CHECK(text(t, 1, "status") == "ok");
    }
    SUBCASE("weak preset follows the closed form")
    {
        const auto t = run_shift_map(config_for(Command::ShiftMap, "fig3", "p_1 = 1\np_2 = -2, -1, 2")).table;
        for (std::size_t i = 0; i < t.rows().size(); ++i)
            CHECK(cell(t, i, "delta0") ==
                  doctest::Approx(cell(t, i, "delta_ac_plus_delta_d")).epsilon(0.05).scale(1e-3 * 1e-4));
        CHECK(text(t, 0, "method") == "Im rho12 zero (exact)");
    }
    SUBCASE("single cell")
    {
        const auto t = run_shift_map(config_for(Command::ShiftMap, "fig5", "p_1 = 1\np_2 = 3")).table;
        CHECK(t.rows().size() == 1);
    }
}

TEST_CASE("ratio-map command")
{
    const auto t = run_ratio_map(config_for(Command::RatioMap, "fig6b", "p_1 = 1\np_2 = -1, 1")).table;
    REQUIRE(t.rows().size() == 2);
    CHECK(text(t, 0, "status") == "resonance-absent");
    CHECK(std::isnan(cell(t, 0, "alpha1")));
    CHECK(text(t, 1, "status") == "ok");
    CHECK(std::isfinite(cell(t, 1, "alpha2_over_alpha1")));
    CHECK(text(t, 1, "ratio_source") == "limit");

    CHECK(kind_of([] {
              auto rc = config_for(Command::RatioMap, "fig6a", "p_1 = 1\np_2 = 1");
              rc.path = SolverPath::Exact;
              run_ratio_map(rc);
          }) == ErrorKind::Config);
    CHECK(kind_of([] { run_ratio_map(config_for(Command::RatioMap, "fig6a", "p_1 = 1\np_2 = 1\nx_grid = 1e-3, 2e-3")); }) ==
          ErrorKind::Config);
}

TEST_CASE("shift-vs-x command")
{
    const auto a = run_shift_vs_x(config_for(Command::ShiftVsX, "fig7a", "ratios = 1\nx_grid = lin:0.01:0.1:10")).table;
    for (std::size_t i = 0; i < a.rows().size(); ++i)
        CHECK(std::abs(cell(a, i, "S")) <= 1e-6 * cell(a, i, "x"));

    const auto b = run_shift_vs_x(config_for(Command::ShiftVsX, "fig7b", "ratios = 0.55")).table;
    int flagged = 0;
    for (std::size_t i = 0; i < b.rows().size(); ++i)
        flagged += text(b, i, "extremum") == "1";
    CHECK(flagged == 1);

    CHECK(kind_of([] { run_shift_vs_x(config_for(Command::ShiftVsX, "fig7a", "x_grid = 0.1, 0.05, 0.2")); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { run_shift_vs_x(config_for(Command::ShiftVsX, "fig7a", "ratio = 1")); }) == ErrorKind::Config);
}

TEST_CASE("exit codes")
{
    CHECK(exit_code(ErrorKind::Config) == 2);
    CHECK(exit_code(ErrorKind::Io) == 2);
    CHECK(exit_code(ErrorKind::InvalidParams) == 2);
    CHECK(exit_code(ErrorKind::IllConditioned) == 3);
    CHECK(exit_code(ErrorKind::FitDegenerate) == 3);
}
