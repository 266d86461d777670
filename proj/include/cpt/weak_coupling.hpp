// Analytic reduced solutions: the adiabatic two-state problem for
// (rho11, rho12) at arbitrary coupling and its first-order expansion in
// Gamma / omega_34 (weak interaction with the off-resonant level 4).

#ifndef CPT_WEAK_COUPLING_HPP
#define CPT_WEAK_COUPLING_HPP

#include <complex>
#include <optional>
#include <string>

#include <cpt/model.hpp>

namespace cpt {

using Complex = std::complex<double>;

/// G = Gamma omega_34 / (Gamma^2 + omega_34^2)
double g_factor(double omega_34, double gamma_opt);

/// CPT linewidth gamma_D = (Omega_1^2 + Omega_2^2) / Gamma + Gamma_12
double gamma_d(const ModelParams& params);

/// Dynamic Stark shift (G / Gamma)(p1^2 Omega_1^2 - p2^2 Omega_2^2)
double stark_shift(const ModelParams& params);

/// Line-shape distortion shift
/// p1 p2 G gamma_D (Omega_2^2 - Omega_1^2) / (Omega_1^2 + Omega_2^2)
double distortion_shift(const ModelParams& params);

/// True when omega_34 >= 3 Gamma or |p1 p2| <= 0.1.
bool weak_coupling_regime(const ModelParams& params);

/// Three-level coherence -Omega_1 Omega_2 / (Gamma [gamma_D + i(delta -
/// delta_AC)]).
Complex rho12_three_level(const ModelParams& params, double delta);

/// First-order low-frequency coherence.
Complex rho12_weak(const ModelParams& params, double delta);

struct GroundPopulations
{
    double rho11 = 0.0;
    double rho22 = 0.0;
};

/// First-order ground populations; rho11 + rho22 = 1.
GroundPopulations populations_weak(const ModelParams& params, double delta);

/// Coefficients of a rho11 + Re{b rho12} = f, c rho11 + d rho12 = h.
struct ReducedCoefficients
{
    double a = 0.0;
    double f = 0.0;
    Complex b;
    Complex c;
    Complex d;
    Complex h;
    double delta_gamma_1 = 0.0;
    double delta_gamma_2 = 0.0;
};

/// Evaluated at the full complex detunings delta_g3 = i Delta_g + Gamma,
/// delta_g4 = i(Delta_g - omega_34) + Gamma, delta_12 = i delta + Gamma_12.
ReducedCoefficients reduced_coefficients(const ModelParams& params,
                                         const DetuningSpec& det);

struct ReducedSolution
{
    double rho11 = 0.0;
    Complex rho12;
    // Optical coherences rho_g3, rho_g4 expressed through rho11, rho12.
    Complex rho13;
    Complex rho14;
    Complex rho23;
    Complex rho24;
};

/// Adiabatic steady state. Throws DegenerateReduction when the
/// determinant of the two-state system vanishes relative to its scale.
ReducedSolution reduced_solution(const ModelParams& params,
                                 const DetuningSpec& det);

struct ShiftResult
{
    double delta_ac = 0.0;
    double delta_d = 0.0;
    double gamma_d = 0.0;
    double delta0_analytic = 0.0;
    /// Im-zero of the reduced solution's rho12, when bracketed.
    std::optional<double> delta0_reduced;
    /// Filled in by the shift extractors when an exact value is requested.
    std::optional<double> delta0_numeric;
    std::string analytic_method = "delta_AC + delta_D";
    std::string numeric_method;
    /// Im rho12 of the reduced solution at delta0_analytic.
    double analytic_residual = 0.0;
};

ShiftResult shift_weak(const ModelParams& params);

}

#endif
