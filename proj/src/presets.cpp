#include <cpt/presets.hpp>

#include <array>
#include <utility>

#include <cpt/error.hpp>

namespace cpt {

namespace {

// Drive shapes: x = (Omega_1^2 + Omega_2^2) / Gamma^2, ratio = Omega_1^2 / Omega_2^2.
const std::array<std::pair<const char*, const char*>, 9> presets{{
    {"fig2", R"(
command = spectrum
path = exact
omega_34 = 10
p_1 = 1
p_2 = -1
x = 1e-4
ratio = 9
delta_gd = lin:-5:5:401
weak_columns = true
)"},
    {"fig3", R"(
command = shift-map
path = exact
omega_34 = 10
x = 1e-4
ratio = 9
p_1 = -1, -0.5, 0.5, 1
p_2 = lin:-2:2:41
)"},
    {"fig4a", R"(
command = spectrum
path = exact
sweep_omega_34 = 10, 1, 0.5, 0.1
p_1 = 1
p_2 = 1
x = 0.1
ratio = 10
delta_gd = lin:-20:20:401
)"},
    {"fig4b", R"(
command = spectrum
path = exact
sweep_omega_34 = 10, 1, 0.5, 0.1
p_1 = -1
p_2 = 1
x = 0.1
ratio = 10
delta_gd = lin:-20:20:401
)"},
    {"fig5", R"(
command = shift-map
path = rational
omega_34 = 0.5
x = 1e-4
ratio = 1
p_1 = 0.5, 1, 2, 4
p_2 = lin:0.1:10:100
)"},
    {"fig6a", R"(
command = ratio-map
omega_34 = 2
ratio = 2
p_1 = lin:-2:2:21
p_2 = lin:-2:2:21
)"},
    {"fig6b", R"(
command = ratio-map
omega_34 = 0.2
ratio = 2
p_1 = lin:-2:2:21
p_2 = lin:-2:2:21
)"},
    {"fig7a", R"(
command = shift-vs-x
omega_34 = 1
p_1 = 1
p_2 = -1
ratios = 0.8, 0.9, 1, 1.1, 1.25
x_grid = lin:0.005:0.3:60
)"},
    {"fig7b", R"(
command = shift-vs-x
omega_34 = 1
p_1 = 1
p_2 = -0.5
ratios = 0.52, 0.55, 0.6, 0.7
x_grid = lin:0.005:0.3:60
)"},
}};

}

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto& [name, text] : presets)
        names.emplace_back(name);
    return names;
}

Config preset(const std::string& name)
{
    for (const auto& [n, text] : presets)
        if (name == n)
            return Config::parse(text, "preset " + name);
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
}

}
