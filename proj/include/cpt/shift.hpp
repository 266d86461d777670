// CPT resonance shift delta_0 from each observable, and the intensity
// series delta_0(x) = alpha_1 x + alpha_2 x^2.
//
// The shift is the extremum (or Im rho12 zero) nearest delta = 0 inside the
// window |delta| < max(10 gamma_D, 2|delta_AC| + 10 gamma_D). Absorption
// and fluorescence features are minima.

#ifndef CPT_SHIFT_HPP
#define CPT_SHIFT_HPP

#include <optional>
#include <string>
#include <vector>

#include <cpt/model.hpp>
#include <cpt/observables.hpp>

namespace cpt {

struct RootInfo
{
    double delta = 0.0;
    /// +1 minimum, -1 maximum, 0 undetermined.
    int curvature = 0;
    bool in_window = false;
};

struct ExtremumReport
{
    double delta0 = 0.0;
    /// +1 minimum, -1 maximum; for a zero crossing the sign of the slope.
    int curvature = 0;
    double window = 0.0;
    std::string method;
    /// Real roots found by the polynomial method, with classification.
    std::vector<RootInfo> roots;
};

/// max(10 gamma_D, 2 |delta_AC| + 10 gamma_D)
double standard_window(const ModelParams& params);

/// Zero of Im rho12 nearest delta = 0, from the exact solver or the
/// reduced solution. window_scale widens the standard window. Throws
/// NoZeroInWindow.
ExtremumReport shift_from_rho12(const ModelParams& params,
                                SolverPath path = SolverPath::Exact,
                                double window_scale = 1.0);

/// Minimum of the rational chi''_g from the real roots of N'D - ND'.
/// Throws Unsupported (Gamma_12 != 0), NoRealRootInWindow or
/// PolynomialIllConditioned.
ExtremumReport chi_extremum_polynomial(const ModelParams& params,
                                       int component = 1,
                                       double window_scale = 1.0);

/// Golden-section search for the chi''_g minimum on the given path.
/// Throws NoExtremum.
ExtremumReport chi_extremum_search(const ModelParams& params,
                                   int component = 1,
                                   SolverPath path = SolverPath::Rational,
                                   double window_scale = 1.0);

/// Golden-section search for the rho_exc minimum. Throws NoExtremum.
ExtremumReport rho_exc_extremum(const ModelParams& params,
                                SolverPath path = SolverPath::Exact,
                                double window_scale = 1.0);

/// [rho_exc(20 gamma_D) - rho_exc(delta_0)] / rho_exc(20 gamma_D) with
/// delta_0 from rho_exc_extremum; 0 when there is no extremum or the
/// minimum lies above the background.
double contrast(const ModelParams& params,
                SolverPath path = SolverPath::Exact);

/// Contrast below which the resonance counts as absent.
inline constexpr double resonance_threshold = 1e-3;

/// Geometric default {2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3}.
std::vector<double> default_x_grid();

struct SeriesCoeffs
{
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    /// alpha2 / alpha1; infinite when alpha1 = 0, NaN when both vanish.
    double ratio = 0.0;
    bool ratio_finite = false;
    /// True when the shift vanishes on the whole grid and the ratio is the
    /// limit taken across p_2.
    bool ratio_from_limit = false;
    /// Euclidean norm of the fit residual, and the same relative to the
    /// norm of the delta_0 data (0 when the data vanish).
    double residual = 0.0;
    double relative_residual = 0.0;
    double condition = 0.0;
    std::vector<double> x_grid;
    std::vector<double> delta0;
    std::vector<double> contrast;
};

/// Least-squares fit of delta_0(x) = alpha_1 x + alpha_2 x^2, with delta_0
/// from chi_extremum_polynomial() at params.with_drive(x, ratio). When
/// delta_0 vanishes at every x, the ratio is the limit of alpha2/alpha1
/// along p_2. Throws
/// ResonanceAbsent when any grid point has contrast below the threshold,
/// FitIllConditioned when the design matrix is degenerate.
SeriesCoeffs series_coefficients(const ModelParams& shape, double ratio,
                                 const std::vector<double>& x_grid);

struct IntensityCurve
{
    std::vector<double> x;
    std::vector<double> delta0;
    /// S = delta_0 / 2 pi
    std::vector<double> s;
    /// Interior local extrema of S(x).
    std::vector<bool> extremum;
};

IntensityCurve shift_vs_intensity(const ModelParams& shape, double ratio,
                                  const std::vector<double>& x_grid);

}

#endif
