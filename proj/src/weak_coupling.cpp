#include <cpt/weak_coupling.hpp>

#include <cmath>

#include <cpt/error.hpp>
#include <cpt/search.hpp>

#include "reduced_impl.hpp"

namespace cpt {

double g_factor(double omega_34, double gamma_opt)
{
    return gamma_opt * omega_34 / (gamma_opt * gamma_opt + omega_34 * omega_34);
}

double gamma_d(const ModelParams& params)
{
    return params.drive_power() / params.gamma_opt + params.gamma_12;
}

double stark_shift(const ModelParams& params)
{
    const double g = g_factor(params.omega_34, params.gamma_opt);
    const double s1 = params.p_1 * params.p_1 * params.rabi_1 * params.rabi_1;
    const double s2 = params.p_2 * params.p_2 * params.rabi_2 * params.rabi_2;
    return g / params.gamma_opt * (s1 - s2);
}

namespace {

// p1 p2 G (Omega_2^2 - Omega_1^2) / (Omega_1^2 + Omega_2^2)
double distortion_factor(const ModelParams& params)
{
    const double g = g_factor(params.omega_34, params.gamma_opt);
    const double w1 = params.rabi_1 * params.rabi_1;
    const double w2 = params.rabi_2 * params.rabi_2;
    return params.p_1 * params.p_2 * g * (w2 - w1) / (w1 + w2);
}

}

double distortion_shift(const ModelParams& params)
{
    return distortion_factor(params) * gamma_d(params);
}

bool weak_coupling_regime(const ModelParams& params)
{
    return params.omega_34 >= 3.0 * params.gamma_opt
        || std::abs(params.p_1 * params.p_2) <= 0.1;
}

Complex rho12_three_level(const ModelParams& params, double delta)
{
    const Complex denom(gamma_d(params), delta - stark_shift(params));
    return -params.rabi_1 * params.rabi_2 / (params.gamma_opt * denom);
}

Complex rho12_weak(const ModelParams& params, double delta)
{
    return rho12_three_level(params, delta)
        * Complex(1.0, distortion_factor(params));
}

GroundPopulations populations_weak(const ModelParams& params, double delta)
{
    const double w1 = params.rabi_1 * params.rabi_1;
    const double w2 = params.rabi_2 * params.rabi_2;
    const double s = w1 + w2;
    const double g = g_factor(params.omega_34, params.gamma_opt);
    const double correction = 2.0 * params.p_1 * params.p_2 * g
        * params.gamma_opt * (delta - stark_shift(params)) / s
        * std::norm(rho12_three_level(params, delta));
    GroundPopulations pops;
    pops.rho11 = w2 / s + correction;
    pops.rho22 = 1.0 - pops.rho11;
    return pops;
}

ReducedCoefficients reduced_coefficients(const ModelParams& params,
                                         const DetuningSpec& det)
{
    const auto k = detail::reduced_coefficients<double>(
        params, det.delta, det.delta_common);
    return {k.a, k.f, k.b, k.c, k.d, k.h, k.delta_gamma_1, k.delta_gamma_2};
}

ReducedSolution reduced_solution(const ModelParams& params,
                                 const DetuningSpec& det)
{
    const auto r = detail::reduced_solution<double>(params, det.delta,
                                                    det.delta_common);
    return {r.rho11, r.rho12, r.rho13, r.rho14, r.rho23, r.rho24};
}

ShiftResult shift_weak(const ModelParams& params)
{
    ShiftResult r;
    r.delta_ac = stark_shift(params);
    r.delta_d = distortion_shift(params);
    r.gamma_d = gamma_d(params);
    r.delta0_analytic = r.delta_ac + r.delta_d;

    auto im_rho12 = [&params](double delta) {
        return reduced_solution(params, DetuningSpec{delta, 0.0}).rho12.imag();
    };
    r.analytic_residual = im_rho12(r.delta0_analytic);
    r.delta0_reduced = bisect_root(im_rho12, r.delta_ac - 10.0 * r.gamma_d,
                                   r.delta_ac + 10.0 * r.gamma_d,
                                   1e-6 * r.gamma_d);
    return r;
}

}
