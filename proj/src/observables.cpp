#include <cpt/observables.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <cpt/error.hpp>
#include <cpt/parallel.hpp>

#include "reduced_impl.hpp"

namespace cpt {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

double rabi(const ModelParams& p, int g)
{
    return g == 1 ? p.rabi_1 : p.rabi_2;
}

double dipole_ratio(const ModelParams& p, int g)
{
    return g == 1 ? p.p_1 : p.p_2;
}

void check_component(int g)
{
    if (g != 1 && g != 2) {
        throw Error(ErrorKind::InvalidParams, "component must be 1 or 2");
    }
}

void require_drive(const ModelParams& p, int g)
{
    check_component(g);
    if (rabi(p, g) == 0.0) {
        std::ostringstream os;
        os << "chi_" << g << " undefined: rabi_" << g << " = 0";
        throw Error(ErrorKind::ZeroDrive, os.str());
    }
}

void require_no_ground_decoherence(const ModelParams& p)
{
    if (p.gamma_12 != 0.0) {
        throw Error(ErrorKind::Unsupported,
                    "rational form is only available for gamma_12 = 0");
    }
}

// Omega_g (rho_3g + p_g rho_4g); its imaginary part is Omega_g^2 chi''_g.
Complex weighted_coherence(const ModelParams& p, const DensityMatrix& rho,
                           int g)
{
    return rabi(p, g) * (rho(3, g) + dipole_ratio(p, g) * rho(4, g));
}

template <typename Vec, typename T>
T horner(const Vec& c, T x)
{
    T acc = 0;
    for (Eigen::Index k = c.size(); k-- > 0;) {
        acc = acc * x + c[k];
    }
    return acc;
}

Eigen::VectorXd trim(Eigen::VectorXd c)
{
    Eigen::Index n = c.size();
    while (n > 1 && c[n - 1] == 0.0) {
        --n;
    }
    return c.head(n);
}

double tilde_power(const ModelParams& p)
{
    return (1.0 + p.p_1 * p.p_1) * p.rabi_1 * p.rabi_1
        + (1.0 + p.p_2 * p.p_2) * p.rabi_2 * p.rabi_2;
}

// Closed-form coefficient tables (component 1). B_6 uses the reading
// (-4 Gamma^2 + p~1^2 Omega_1^2 + p~2^2 Omega_2^2).
void closed_form_tables(const ModelParams& prm, std::array<double, 8>& A,
                    std::array<double, 10>& B)
{
    const double G = prm.gamma_opt;
    const double w = prm.omega_34;
    const double p1 = prm.p_1;
    const double p2 = prm.p_2;
    const double O1 = prm.rabi_1;
    const double O2 = prm.rabi_2;
    const double P1 = 1.0 + p1 * p1;
    const double P2 = 1.0 + p2 * p2;
    const double G2 = G * G, G4 = G2 * G2;
    const double w2 = w * w, w4 = w2 * w2;
    const double o1 = O1 * O1, o2 = O2 * O2;  // Omega_g^2
    const double o1_2 = o1 * o1, o2_2 = o2 * o2;  // Omega_g^4
    const double o1_3 = o1_2 * o1, o2_3 = o2_2 * o2;  // Omega_g^6
    const double S = o1 + o2;
    const double T = P1 * o1 + P2 * o2;
    auto pw = [](double x, int n) { return std::pow(x, n); };

    A[0] = 0.0;
    A[1] = -64.0 * pw(p1 - p2, 2)
        * (G2 * T * T + (P1 * o1_2 + 2.0 * (1.0 + p1 * p2) * o1 * o2 + P2 * o2_2) * w2);
    A[2] = 64.0 * (p1 - p2) * w
        * (-p2 * o1_2 - pw(p2, 3) * o1 * o2
           + pw(p1, 3) * o1 * (2.0 * G2 + o1 - o2)
           + p2 * o2 * (G2 + 2.0 * w2 + o2)
           + p1 * (2.0 * G2 * o1 + o1_2 - p2 * p2 * o1 - P2 * o2_2
                   + 2.0 * P2 * o1 * o2));
    A[3] = -16.0
        * (4.0 * G2 * o1 * o2 + 4.0 * w4 - 4.0 * p2 * p2 * w2 * o1
           + pw(p2, 6) * o1_2 - 2.0 * pw(p1, 5) * p2 * o1_2 + p2 * p2 * o1_2
           + 4.0 * p2 * p2 * w2 * o2 + 2.0 * p2 * p2 * o1 * o2
           + 2.0 * pw(p2, 4) * o1 * o2 + p2 * p2 * o2_2
           + 2.0 * pw(p2, 4) * o2_2 + pw(p2, 6) * o2_2
           - 4.0 * pw(p1, 3) * p2 * (o1 + P2 * o2) * o1
           - 2.0 * p1 * p2 * pw(o1 + P2 * o2, 2)
           + pw(p1, 4) * (o1_2 + 2.0 * P2 * o1 * o2)
           - 4.0 * w2
               * (-2.0 * w2 + pw(p1, 4) * o1 - 2.0 * pw(p1, 3) * p2 * o1
                  + pw(p2, 4) * o2 + p2 * p2 * (-w2 + o1 + o2)
                  - 2.0 * p1 * p2 * (o1 + P2 * o2)
                  + p1 * p1 * (-w2 + P2 * o1 + P2 * o2))
           + p1 * p1
               * ((1.0 + 2.0 * p2 * p2) * o1_2 - 4.0 * w2 * o2 + P2 * o2_2
                  + 2.0 * o1 * (2.0 * w2 + P2 * o2)));
    A[4] = 32.0 * w * (p1 - p2)
        * (pw(p1, 3) * o1 - p1 * (G2 + o1 - 2.0 * o2)
           + p2 * (-G2 + 2.0 * o1 + (-1.0 + p2 * p2) * o2));
    A[5] = 16.0
        * (-2.0 * G2 * P1 * P2 + 2.0 * w2 - p2 * p2 * w2 + pw(p1, 4) * o1
           - 2.0 * pw(p1, 3) * p2 * o1 + p2 * p2 * o1 + p2 * p2 * o2
           + pw(p2, 4) * o2 - 2.0 * p1 * p2 * (o1 + P2 * o2)
           + p1 * p1 * (-w2 + P2 * o1 + P2 * o2));
    A[6] = 16.0 * w * (p2 * p2 - p1 * p1);
    A[7] = -4.0 * P1 * P2;

    B[0] = 0.0;
    B[1] = -64.0 * w4 * pw(S, 3) - 64.0 * G4 * pw(T, 3)
        - 64.0 * G2 * w2 * S
            * ((2.0 + 3.0 * p1 * p1 + pw(p1, 4)) * o1_2
               + (4.0 + 3.0 * p2 * p2 + p1 * p1 * (3.0 + 2.0 * p2 * p2)) * o1 * o2
               + (2.0 + 3.0 * p2 * p2 + pw(p2, 4)) * o2_2);
    B[2] = 64.0 * w * (P1 * o1 - P2 * o2)
        * (2.0 * G2 * w2 * S - w2 * S * S + 2.0 * G4 * T);
    B[3] = -64.0 * G2 * T
        + 64.0 * G4
            * (P1 * o1_2 - (2.0 + p2 * p2) * w2 * o2 + P2 * o2_2
               + o1 * (-(2.0 + p1 * p1) * w2 + 2.0 * P1 * P2 * o2))
        - 16.0 * w2 * S
            * ((pw(p1, 4) - 2.0 - p1 * p1) * o1_2
               + (pw(p2, 4) - 2.0 - p2 * p2) * o2_2 - 4.0 * w2 * o2
               - 4.0 * w2 * o1
               + (-4.0 - p2 * p2 + p1 * p1 * (-1.0 + 2.0 * p2 * p2)) * o2)
        - 32.0 * G2
            * (P1 * o1_3 + 2.0 * w4 * o2 - 4.0 * w2 * o2_2 + P2 * o2_3
               + o1_2 * (-4.0 * w2 + 3.0 * P1 * P2 * o2)
               + o1 * (2.0 * w4 - 8.0 * w2 * o2 + 3.0 * P1 * P2 * o2_2));
    B[4] = 32.0 * w * (p1 * p1 * o1 - p2 * p2 * o2)
        * (-2.0 * G4 + w2 * S + 2.0 * G2 * T);
    B[5] = -4.0
        * (P1 * o1_3 + 4.0 * w4 * o2 + 8.0 * w2 * o2_2 + o2_3
           + 3.0 * p2 * p2 * o2_3 + 3.0 * pw(p2, 4) * o2_3 + pw(p2, 6) * o2_3
           + 12.0 * G2 * T + o1_2 * (8.0 * w2 + 3.0 * P1 * P2 * o2)
           + o1 * (4.0 * w4 + 16.0 * w2 * o2 + 3.0 * P1 * P2 * o2_2)
           - 8.0 * G2
               * (P1 * o1_2 - p2 * p2 * w2 * o2 + P2 * o2_2
                  + o1 * (-p1 * p1 * w2 + 2.0 * P1 * P2 * o2)));
    B[6] = 8.0 * w * (p1 * p1 * o1 - p2 * p2 * o2) * (-4.0 * G2 + T);
    B[7] = 4.0
        * (P1 * o1_2 - (p2 * p2 - 2.0) * w2 * o2 + P2 * o2_2 - 3.0 * G2 * T
           + o1 * (-(p1 * p1 - 2.0) * w2 + 2.0 * P1 * P2 * o2));
    B[8] = -4.0 * w * (p1 * p1 * o1 - p2 * p2 * o2);
    B[9] = -T;
}

// Samples and fit run in extended precision: the coefficient map can have
// a condition number near 1e9, which would leave only ~1e-7 accuracy in
// double.
using Real = long double;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RealMatrixX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

struct Fit
{
    RealVector numerator;    // ascending powers of delta
    RealVector denominator;  // ascending powers of delta
    double condition = 0.0;
    double error = 0.0;
};

// Fits F = n / d with deg n = nn, deg d = nn + 2 and monic d in t = delta/s.
// The linearized equations n - F d = 0 are reweighted by 1 / |d| from the
// previous pass (Sanathanan-Koerner), which turns the algebraic residual
// into the true one. Returns false when the equilibrated system is rank
// deficient at working precision; out.error is the relative out-of-sample
// deviation.
bool fit_degree(const std::vector<Real>& pts, const std::vector<Real>& f,
                const std::vector<Real>& check_pts,
                const std::vector<Real>& check_f, Real s, int nn, Fit& out)
{
    const int nd = nn + 2;
    const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index cols = nn + 1 + nd;
    RealVector weight = RealVector::Ones(rows);
    RealVector z;
    Real ratio = 0;

    for (int pass = 0; pass < 4; ++pass) {
        RealMatrixX m(rows, cols);
        RealVector rhs(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Real t = pts[static_cast<std::size_t>(r)] / s;
            const Real fv = f[static_cast<std::size_t>(r)];
            Real tk = 1;
            for (int k = 0; k <= nd; ++k) {
                if (k <= nn) {
                    m(r, k) = tk;
                }
                if (k < nd) {
                    m(r, nn + 1 + k) = -fv * tk;
                } else {
                    rhs[r] = fv * tk;
                }
                tk *= t;
            }
            Real row_scale = weight[r];
            if (pass == 0) {
                row_scale = m.row(r).cwiseAbs().sum() + std::abs(rhs[r]);
            }
            m.row(r) /= row_scale;
            rhs[r] /= row_scale;
        }
        const RealVector col_scale = m.colwise().norm().transpose();
        for (Eigen::Index c = 0; c < cols; ++c) {
            m.col(c) /= col_scale[c];
        }
        Eigen::JacobiSVD<RealMatrixX> svd(
            m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        ratio = sv[sv.size() - 1] / sv[0];
        if (!(ratio > Real(1e-14))) {
            return false;
        }
        z = svd.solve(rhs).cwiseQuotient(col_scale);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Real t = pts[static_cast<std::size_t>(r)] / s;
            Real acc = 1;
            for (int k = nd - 1; k >= 0; --k) {
                acc = acc * t + z[nn + 1 + k];
            }
            weight[r] = std::abs(acc);
        }
    }

    RealVector num(nn + 1);
    RealVector den(nd + 1);
    Real sk = 1;
    for (int k = 0; k <= nd; ++k) {
        if (k <= nn) {
            num[k] = z[k] / sk;
        }
        den[k] = (k < nd ? z[nn + 1 + k] : Real(1)) / sk;
        sk *= s;
    }

    Real peak = 0;
    Real worst = 0;
    for (std::size_t i = 0; i < check_pts.size(); ++i) {
        const Real x = check_pts[i];
        peak = std::max(peak, std::abs(check_f[i]));
        worst = std::max(worst,
                         std::abs(horner(num, x) / horner(den, x) - check_f[i]));
    }
    out.numerator = num;
    out.denominator = den;
    out.condition = static_cast<double>(1 / ratio);
    out.error = static_cast<double>(worst / peak);
    return true;
}

}

Complex susceptibility(const ModelParams& params, const DensityMatrix& rho,
                       int component)
{
    require_drive(params, component);
    const double o = rabi(params, component);
    return weighted_coherence(params, rho, component) / (o * o);
}

Susceptibilities susceptibility(const ModelParams& params,
                                const DensityMatrix& rho)
{
    return {susceptibility(params, rho, 1), susceptibility(params, rho, 2)};
}

Complex susceptibility(const ModelParams& params, const ReducedSolution& red,
                       int component)
{
    require_drive(params, component);
    const Complex g3 = component == 1 ? red.rho13 : red.rho23;
    const Complex g4 = component == 1 ? red.rho14 : red.rho24;
    return (std::conj(g3) + dipole_ratio(params, component) * std::conj(g4))
        / rabi(params, component);
}

double excited_population(const DensityMatrix& rho)
{
    return rho.population(3) + rho.population(4);
}

double excited_population_from_chi(const ModelParams& params,
                                   const DensityMatrix& rho)
{
    const double sum = weighted_coherence(params, rho, 1).imag()
        + weighted_coherence(params, rho, 2).imag();
    return 2.0 / params.gamma_exc * sum;
}

double excited_population_identity_error(const ModelParams& params,
                                         const DensityMatrix& rho)
{
    return std::abs(excited_population(rho)
                    - excited_population_from_chi(params, rho));
}

const char* to_string(CoefficientSource source)
{
    return source == CoefficientSource::AppendixEvaluated ? "appendix-evaluated"
                                                          : "reconstructed";
}

double RationalChi::chi_im(double delta) const
{
    return prefactor * horner(reduced_numerator(), delta)
        / horner(reduced_denominator(), delta);
}

Eigen::VectorXd RationalChi::reduced_numerator() const
{
    const Eigen::Map<const Eigen::VectorXd> full(a.data(), 8);
    if (a[0] == 0.0 && b[0] == 0.0) {
        return trim(full.tail(7));
    }
    return trim(full);
}

Eigen::VectorXd RationalChi::reduced_denominator() const
{
    const Eigen::Map<const Eigen::VectorXd> full(b.data(), 10);
    if (a[0] == 0.0 && b[0] == 0.0) {
        return trim(full.tail(9));
    }
    return trim(full);
}

double chi_im_adiabatic(const ModelParams& params, double delta, int component)
{
    const ReducedSolution red =
        reduced_solution(params, DetuningSpec{delta, 0.0});
    return susceptibility(params, red, component).imag();
}

RationalChi appendix_b_coefficients(const ModelParams& params, int component)
{
    require_no_ground_decoherence(params);
    check_component(component);
    const RationalChi fitted = reconstruct_rational(params, component);

    RationalChi out;
    out.component = component;
    out.source = CoefficientSource::AppendixEvaluated;
    out.a0_b0_reconstructed = true;
    out.prefactor = fitted.prefactor;
    out.reduced_degree = 6;
    if (component == 1) {
        closed_form_tables(params, out.a, out.b);
    } else {
        // chi''_2(delta) = chi''_1(-delta) of the swapped system.
        closed_form_tables(params.swapped(), out.a, out.b);
        for (std::size_t n = 1; n < out.a.size(); n += 2) {
            out.a[n] = -out.a[n];
        }
        for (std::size_t n = 1; n < out.b.size(); n += 2) {
            out.b[n] = -out.b[n];
        }
    }
    // Common normalization: B_9 = -(p~1^2 Omega_1^2 + p~2^2 Omega_2^2).
    const double scale = -tilde_power(params) / out.b[9];
    for (double& v : out.a) {
        v *= scale;
    }
    for (double& v : out.b) {
        v *= scale;
    }
    out.a[0] = fitted.a[0];
    out.b[0] = fitted.b[0];
    return out;
}

RationalChi reconstruct_rational(const ModelParams& params, int component)
{
    require_no_ground_decoherence(params);
    require_valid(params);
    require_drive(params, component);
    const double other = rabi(params, 3 - component);
    if (other == 0.0) {
        throw Error(ErrorKind::ZeroDrive,
                    "rational form needs both fields: chi'' vanishes");
    }
    const double prefactor = params.gamma_opt * other * other;
    const double gd = gamma_d(params);
    const double s = std::max(params.gamma_opt, params.omega_34);

    const Real norm = static_cast<Real>(params.gamma_opt) * other * other;
    auto sample = [&](Real delta) {
        const auto red = detail::reduced_solution<Real>(params, delta, 0);
        return detail::chi_im_reduced(params, red, component) / norm;
    };

    // Multi-scale symmetric grid from 0.03 gamma_D out to 30 s.
    const int per_side = 40;
    const double u_lo = -1.5;
    const double u_hi = std::log10(30.0 * s / gd);
    const double du = (u_hi - u_lo) / (per_side - 1);
    std::vector<Real> pts{0};
    std::vector<Real> check;
    for (int k = 0; k < per_side; ++k) {
        const Real v = gd * std::pow(Real(10), Real(u_lo + du * k));
        pts.push_back(v);
        pts.push_back(-v);
        const Real c = gd * std::pow(Real(10), Real(u_lo + du * (k + 0.37)));
        if (k + 1 < per_side) {
            check.push_back(c);
            check.push_back(-c);
        }
    }
    std::vector<Real> f(pts.size());
    std::vector<Real> check_f(check.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        f[i] = sample(pts[i]);
    }
    for (std::size_t i = 0; i < check.size(); ++i) {
        check_f[i] = sample(check[i]);
    }

    // Lowest degree that reproduces the samples to near working precision
    // is the lowest-terms form; otherwise keep the best acceptable fit.
    std::optional<Fit> chosen;
    int chosen_degree = -1;
    for (int nn = 0; nn <= 6; ++nn) {
        Fit fit;
        if (!fit_degree(pts, f, check, check_f, Real(s), nn, fit)) {
            continue;
        }
        if (fit.error <= 1e-12) {
            chosen = fit;
            chosen_degree = nn;
            break;
        }
        if (fit.error <= 1e-8 && (!chosen || fit.error < chosen->error)) {
            chosen = fit;
            chosen_degree = nn;
        }
    }
    if (chosen) {
        const Fit& fit = *chosen;
        RationalChi out;
        out.component = component;
        out.source = CoefficientSource::Reconstructed;
        out.prefactor = prefactor;
        out.reduced_degree = chosen_degree;
        out.fit_condition = fit.condition;
        out.fit_error = fit.error;
        const Real scale =
            -tilde_power(params) / fit.denominator[fit.denominator.size() - 1];
        for (Eigen::Index k = 0; k < fit.numerator.size(); ++k) {
            out.a[static_cast<std::size_t>(k + 1)] =
                static_cast<double>(scale * fit.numerator[k]);
        }
        for (Eigen::Index k = 0; k < fit.denominator.size(); ++k) {
            out.b[static_cast<std::size_t>(k + 1)] =
                static_cast<double>(scale * fit.denominator[k]);
        }
        return out;
    }
    throw Error(ErrorKind::FitDegenerate,
                "no rational degree reproduces the adiabatic chi''");
}

const char* to_string(SolverPath path)
{
    switch (path) {
    case SolverPath::Exact:
        return "exact";
    case SolverPath::Adiabatic:
        return "adiabatic";
    case SolverPath::Rational:
        return "rational";
    }
    return "unknown";
}

SolverPath parse_solver_path(const std::string& name)
{
    if (name == "exact") {
        return SolverPath::Exact;
    }
    if (name == "adiabatic") {
        return SolverPath::Adiabatic;
    }
    if (name == "rational") {
        return SolverPath::Rational;
    }
    throw Error(ErrorKind::Config, "unknown solver path '" + name + "'");
}

Spectrum spectrum(const ModelParams& params, const std::vector<double>& grid,
                  SolverPath path, double delta_common)
{
    require_valid(params);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::InvalidParams,
                        "detuning grid must be strictly increasing");
        }
    }

    Spectrum out;
    out.chi_path = path;
    out.state_path = path == SolverPath::Exact ? SolverPath::Exact
                                               : SolverPath::Adiabatic;
    out.points.resize(grid.size());

    std::array<RationalChi, 2> rational;
    if (path == SolverPath::Rational) {
        if (delta_common != 0.0) {
            throw Error(ErrorKind::Unsupported,
                        "rational path requires delta_common = 0");
        }
        rational[0] = reconstruct_rational(params, 1);
        rational[1] = reconstruct_rational(params, 2);
    }

    const double o1 = params.rabi_1;
    const double o2 = params.rabi_2;
    auto chi_or_nan = [](double rabi_g, auto&& eval) {
        return rabi_g == 0.0 ? nan_value : eval();
    };

    parallel_for(grid.size(), [&](std::size_t i) {
        SpectrumPoint& pt = out.points[i];
        pt.delta = grid[i];
        const DetuningSpec det{grid[i], delta_common};
        if (path == SolverPath::Exact) {
            const DensityMatrix rho = solve_steady(params, det);
            pt.chi1_im = chi_or_nan(o1, [&] {
                return susceptibility(params, rho, 1).imag();
            });
            pt.chi2_im = chi_or_nan(o2, [&] {
                return susceptibility(params, rho, 2).imag();
            });
            pt.rho_exc = excited_population(rho);
            pt.rho12_re = rho.rho12().real();
            pt.rho12_im = rho.rho12().imag();
            pt.rho11 = rho.population(1);
            pt.rho22 = rho.population(2);
            return;
        }
        const ReducedSolution red = reduced_solution(params, det);
        pt.rho12_re = red.rho12.real();
        pt.rho12_im = red.rho12.imag();
        pt.rho11 = red.rho11;
        pt.rho22 = 1.0 - red.rho11;
        if (path == SolverPath::Adiabatic) {
            pt.chi1_im = chi_or_nan(o1, [&] {
                return susceptibility(params, red, 1).imag();
            });
            pt.chi2_im = chi_or_nan(o2, [&] {
                return susceptibility(params, red, 2).imag();
            });
        } else {
            pt.chi1_im = rational[0].chi_im(grid[i]);
            pt.chi2_im = rational[1].chi_im(grid[i]);
        }
        const double w1 = std::isnan(pt.chi1_im) ? 0.0 : o1 * o1 * pt.chi1_im;
        const double w2 = std::isnan(pt.chi2_im) ? 0.0 : o2 * o2 * pt.chi2_im;
        pt.rho_exc = 2.0 / params.gamma_exc * (w1 + w2);
    });
    return out;
}

}
