#include <cpt/model.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <cpt/error.hpp>

namespace cpt {

namespace {

constexpr double adiabatic_limit = 0.3;
constexpr double branching_tolerance = 1e-12;

bool finite_all(const ModelParams& p)
{
    const double values[] = {p.gamma_opt, p.gamma_exc, p.gamma_12,
                             p.omega_34, p.rabi_1, p.rabi_2, p.p_1, p.p_2,
                             p.branching.gamma_31, p.branching.gamma_32,
                             p.branching.gamma_41, p.branching.gamma_42};
    return std::all_of(std::begin(values), std::end(values),
                       [](double v) { return std::isfinite(v); });
}

}

BranchingRatios BranchingRatios::uniform(double gamma_exc)
{
    const double half = 0.5 * gamma_exc;
    return {half, half, half, half};
}

double BranchingRatios::asymmetry(int g, double gamma_exc) const
{
    // (gamma_4g / gamma_3g - gamma_4g' / gamma_3g') * gamma_3g / gamma_4
    if (g == 1) {
        return (gamma_41 / gamma_31 - gamma_42 / gamma_32) * gamma_31 /
               gamma_exc;
    }
    return (gamma_42 / gamma_32 - gamma_41 / gamma_31) * gamma_32 / gamma_exc;
}

ModelParams ModelParams::with_drive(double x, double ratio) const
{
    ModelParams out = *this;
    const double power = x * gamma_opt * gamma_opt;
    out.rabi_2 = std::sqrt(power / (1.0 + ratio));
    out.rabi_1 = std::sqrt(ratio) * out.rabi_2;
    return out;
}

ModelParams ModelParams::swapped() const
{
    ModelParams out = *this;
    std::swap(out.rabi_1, out.rabi_2);
    std::swap(out.p_1, out.p_2);
    std::swap(out.branching.gamma_31, out.branching.gamma_32);
    std::swap(out.branching.gamma_41, out.branching.gamma_42);
    return out;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (const auto& e : errors) {
        os << "error: " << e << '\n';
    }
    for (const auto& a : advisories) {
        os << "advisory: " << a << '\n';
    }
    return os.str();
}

ValidationReport validate(const ModelParams& p)
{
    ValidationReport report;
    if (!finite_all(p)) {
        report.errors.emplace_back("non-finite parameter");
        return report;
    }
    if (!(p.gamma_opt > 0.0)) {
        report.errors.emplace_back("gamma_opt must be positive");
    }
    if (!(p.gamma_exc > 0.0)) {
        report.errors.emplace_back("gamma_exc must be positive");
    }
    if (p.gamma_12 < 0.0) {
        report.errors.emplace_back("gamma_12 must be non-negative");
    }
    if (!(p.omega_34 > 0.0)) {
        report.errors.emplace_back("omega_34 must be positive");
    }
    if (p.gamma_opt < 0.5 * p.gamma_exc) {
        report.errors.emplace_back(
            "Gamma >= gamma/2 violated (optical decoherence below the "
            "radiative limit)");
    }
    if (!(p.drive_power() > 0.0)) {
        report.errors.emplace_back("no drive: rabi_1 = rabi_2 = 0");
    }

    const auto& b = p.branching;
    if (b.gamma_31 < 0.0 || b.gamma_32 < 0.0 || b.gamma_41 < 0.0 ||
        b.gamma_42 < 0.0) {
        report.errors.emplace_back("negative branching rate");
    }
    const double scale = branching_tolerance * std::abs(p.gamma_exc);
    if (std::abs(b.gamma_31 + b.gamma_32 - p.gamma_exc) > scale ||
        std::abs(b.gamma_41 + b.gamma_42 - p.gamma_exc) > scale) {
        report.errors.emplace_back(
            "branching normalization violated: gamma_e1 + gamma_e2 must "
            "equal gamma_exc");
    }

    if (std::max(std::abs(p.rabi_1), std::abs(p.rabi_2)) >
        adiabatic_limit * p.gamma_opt) {
        report.advisories.emplace_back(
            "adiabaticity: max(rabi_1, rabi_2) > 0.3 Gamma");
    }
    return report;
}

ValidationReport validate(const ModelParams& params, const DetuningSpec& det)
{
    ValidationReport report = validate(params);
    const double limit = adiabatic_limit * params.gamma_opt;
    if (std::abs(det.detuning_1()) > limit ||
        std::abs(det.detuning_2()) > limit) {
        report.advisories.emplace_back(
            "one-photon detuning |Delta_g| > 0.3 Gamma");
    }
    return report;
}

void require_valid(const ModelParams& params)
{
    const auto report = validate(params);
    if (!report.ok()) {
        throw Error(ErrorKind::InvalidParams, report.summary());
    }
}

ModelParams uniform_preset(double gamma_exc, double gamma_opt,
                           double gamma_12, double omega_34, double rabi_1,
                           double rabi_2, double p_1, double p_2)
{
    ModelParams p;
    p.gamma_exc = gamma_exc;
    p.gamma_opt = gamma_opt;
    p.gamma_12 = gamma_12;
    p.omega_34 = omega_34;
    p.rabi_1 = rabi_1;
    p.rabi_2 = rabi_2;
    p.p_1 = p_1;
    p.p_2 = p_2;
    p.branching = BranchingRatios::uniform(gamma_exc);
    require_valid(p);
    return p;
}

}
