// Measurable spectra: susceptibilities chi_g, the excited-state population,
// and the rational form of Im chi_g in the two-photon detuning.
//
// Sign convention: chi''_g = Im chi_g is non-negative and its CPT feature
// is a minimum (transparency dip), matching the closed weak-coupling form.

#ifndef CPT_OBSERVABLES_HPP
#define CPT_OBSERVABLES_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <cpt/model.hpp>
#include <cpt/steady_state.hpp>
#include <cpt/weak_coupling.hpp>

namespace cpt {

/// chi_g = (rho_3g + p_g rho_4g) / Omega_g. Throws ZeroDrive if Omega_g = 0.
Complex susceptibility(const ModelParams& params, const DensityMatrix& rho,
                       int component);

struct Susceptibilities
{
    Complex chi1;
    Complex chi2;
};

/// Both components; throws ZeroDrive if either Rabi frequency vanishes.
Susceptibilities susceptibility(const ModelParams& params,
                                const DensityMatrix& rho);

/// Adiabatic susceptibility built from the reduced optical coherences.
Complex susceptibility(const ModelParams& params, const ReducedSolution& red,
                       int component);

/// rho_33 + rho_44.
double excited_population(const DensityMatrix& rho);

/// (2 / gamma)(Omega_1^2 chi''_1 + Omega_2^2 chi''_2), evaluated without
/// dividing by Omega_g so that it also holds for a single-field drive.
double excited_population_from_chi(const ModelParams& params,
                                   const DensityMatrix& rho);

/// |rho_33 + rho_44 - (2/gamma)(Omega_1^2 chi''_1 + Omega_2^2 chi''_2)|
double excited_population_identity_error(const ModelParams& params,
                                         const DensityMatrix& rho);

enum class CoefficientSource
{
    AppendixEvaluated,
    Reconstructed
};

const char* to_string(CoefficientSource source);

/// chi''_g(delta) = prefactor * sum A_n delta^n / sum B_n delta^n with
/// prefactor = Gamma Omega_g'^2 and the normalization
/// B_9 = -(p~1^2 Omega_1^2 + p~2^2 Omega_2^2), p~g^2 = 1 + p_g^2.
struct RationalChi
{
    int component = 1;
    std::array<double, 8> a{};
    std::array<double, 10> b{};
    double prefactor = 0.0;
    CoefficientSource source = CoefficientSource::Reconstructed;
    /// True when A_0, B_0 come from the reconstruction (always the case).
    bool a0_b0_reconstructed = true;
    /// Degree of the numerator after removing common factors; 6 in the
    /// generic case, lower for degenerate drives such as p1 = p2 = 0.
    int reduced_degree = 6;
    /// Condition number of the equilibrated fit matrix.
    double fit_condition = 0.0;
    /// Largest relative out-of-sample deviation seen during the fit.
    double fit_error = 0.0;

    double A(int n) const { return a.at(static_cast<std::size_t>(n)); }
    double B(int n) const { return b.at(static_cast<std::size_t>(n)); }

    double chi_im(double delta) const;

    /// Numerator and denominator with the common factor delta removed when
    /// A_0 = B_0 = 0. Coefficients in ascending powers of delta.
    Eigen::VectorXd reduced_numerator() const;
    Eigen::VectorXd reduced_denominator() const;
};

/// Adiabatic chi''_g at two-photon detuning delta (Delta_0 = 0).
double chi_im_adiabatic(const ModelParams& params, double delta, int component);

/// Closed-form coefficient tables for component 1 with A_0, B_0 from
/// reconstruct_rational(). Component 2 uses the swapped parameters with
/// delta -> -delta. Throws Unsupported when Gamma_12 != 0.
RationalChi appendix_b_coefficients(const ModelParams& params,
                                    int component = 1);

/// Rebuilds the rational form of the adiabatic chi''_g by sampling it on a
/// multi-scale delta grid and solving the linearized fit. Throws
/// Unsupported when Gamma_12 != 0 and FitDegenerate when no degree fits.
RationalChi reconstruct_rational(const ModelParams& params, int component = 1);

enum class SolverPath
{
    Exact,
    Adiabatic,
    Rational
};

const char* to_string(SolverPath path);
SolverPath parse_solver_path(const std::string& name);

struct SpectrumPoint
{
    double delta = 0.0;
    double chi1_im = 0.0;
    double chi2_im = 0.0;
    double rho_exc = 0.0;
    double rho12_re = 0.0;
    double rho12_im = 0.0;
    double rho11 = 0.0;
    double rho22 = 0.0;
};

struct Spectrum
{
    std::vector<SpectrumPoint> points;
    /// Path that produced the chi'' and rho_exc columns.
    SolverPath chi_path = SolverPath::Exact;
    /// Path that produced the rho12 and ground population columns.
    SolverPath state_path = SolverPath::Exact;
};

/// Evaluates the observables on a monotone delta grid. The rational path
/// needs Gamma_12 = 0 and Delta_0 = 0; its state columns come from the
/// adiabatic solution. chi''_g is NaN for a component with Omega_g = 0.
Spectrum spectrum(const ModelParams& params, const std::vector<double>& grid,
                  SolverPath path = SolverPath::Exact,
                  double delta_common = 0.0);

}

#endif
