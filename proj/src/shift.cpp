#include <cpt/shift.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <unsupported/Eigen/Polynomials>

#include <cpt/error.hpp>
#include <cpt/parallel.hpp>
#include <cpt/search.hpp>
#include <cpt/steady_state.hpp>
#include <cpt/weak_coupling.hpp>

namespace cpt {

namespace {

constexpr int scan_points = 801;

std::vector<double> scan_grid(double window)
{
    std::vector<double> grid(scan_points);
    for (int i = 0; i < scan_points; ++i)
        grid[static_cast<std::size_t>(i)] =
            -window + 2.0 * window * i / (scan_points - 1);
    grid[scan_points / 2] = 0.0;
    return grid;
}

double checked_window(const ModelParams& params, double window_scale)
{
    if (!(window_scale > 0.0) || !std::isfinite(window_scale))
        throw Error(ErrorKind::InvalidParams, "window_scale must be positive");
    return standard_window(params) * window_scale;
}

// Interior local minimum of f on the scan grid nearest delta = 0, refined
// by golden-section search between its neighbours.
std::optional<Minimum> grid_minimum(const ScalarFunction& f, double window,
                                    double tol)
{
    const auto grid = scan_grid(window);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = f(grid[i]);

    std::optional<std::size_t> best;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (!(values[i] < values[i - 1] && values[i] <= values[i + 1]))
            continue;
        if (!best || std::abs(grid[i]) < std::abs(grid[*best]))
            best = i;
    }
    if (!best)
        return std::nullopt;
    return golden_section_minimize(f, grid[*best - 1], grid[*best + 1], tol);
}

double rho_exc_at(const ModelParams& params, SolverPath path, double delta)
{
    if (path == SolverPath::Exact)
        return excited_population(solve_steady(params, DetuningSpec{delta, 0.0}));
    const auto red = reduced_solution(params, DetuningSpec{delta, 0.0});
    // Identity rho_exc = (2/gamma) sum Omega_g Im(rho_3g + p_g rho_4g).
    const double s1 = params.rabi_1 * std::conj(red.rho13 + params.p_1 * red.rho14).imag();
    const double s2 = params.rabi_2 * std::conj(red.rho23 + params.p_2 * red.rho24).imag();
    return 2.0 / params.gamma_exc * (s1 + s2);
}

// Polynomial helpers on ascending coefficient vectors.
using Poly = Eigen::VectorXd;

Poly derivative(const Poly& p)
{
    if (p.size() <= 1)
        return Poly::Zero(1);
    Poly d(p.size() - 1);
    for (Eigen::Index k = 1; k < p.size(); ++k)
        d(k - 1) = static_cast<double>(k) * p(k);
    return d;
}

Poly multiply(const Poly& a, const Poly& b)
{
    Poly c = Poly::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            c(i + j) += a(i) * b(j);
    return c;
}

Poly subtract(const Poly& a, const Poly& b)
{
    Poly c = Poly::Zero(std::max(a.size(), b.size()));
    c.head(a.size()) += a;
    c.head(b.size()) -= b;
    return c;
}

long double evaluate(const Poly& p, long double t)
{
    long double v = 0.0L;
    for (Eigen::Index k = p.size() - 1; k >= 0; --k)
        v = v * t + static_cast<long double>(p(k));
    return v;
}

double abs_scale(const Poly& p, double t)
{
    double v = 0.0;
    for (Eigen::Index k = p.size() - 1; k >= 0; --k)
        v = v * std::abs(t) + std::abs(p(k));
    return v;
}

double polish(const Poly& p, const Poly& dp, double t)
{
    long double x = t;
    for (int it = 0; it < 8; ++it) {
        const long double d = evaluate(dp, x);
        if (d == 0.0L)
            break;
        const long double step = evaluate(p, x) / d;
        x -= step;
        if (std::abs(step) <= 1e-17L * std::max(1.0L, std::abs(x)))
            break;
    }
    return static_cast<double>(x);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}

double standard_window(const ModelParams& params)
{
    const double gd = gamma_d(params);
    return std::max(10.0 * gd, 2.0 * std::abs(stark_shift(params)) + 10.0 * gd);
}

ExtremumReport shift_from_rho12(const ModelParams& params, SolverPath path,
                                double window_scale)
{
    require_valid(params);
    if (path == SolverPath::Rational)
        throw Error(ErrorKind::Unsupported,
                    "rho12 zero needs the exact or adiabatic path");
    const double window = checked_window(params, window_scale);
    const double gd = gamma_d(params);

    const ScalarFunction im_rho12 = [&](double delta) {
        const DetuningSpec det{delta, 0.0};
        if (path == SolverPath::Exact)
            return solve_steady(params, det).rho12().imag();
        return reduced_solution(params, det).rho12.imag();
    };

    const auto grid = scan_grid(window);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = im_rho12(grid[i]);

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (values[i] == 0.0 || sign_of(values[i]) * sign_of(values[i + 1]) < 0) {
            const double mid = std::abs(values[i]) == 0.0 ? std::abs(grid[i])
                                                          : std::abs(0.5 * (grid[i] + grid[i + 1]));
            const double cur = !best ? 0.0
                                     : (values[*best] == 0.0 ? std::abs(grid[*best])
                                                             : std::abs(0.5 * (grid[*best] + grid[*best + 1])));
            if (!best || mid < cur)
                best = i;
        }
    }
    if (!best)
        throw Error(ErrorKind::NoZeroInWindow,
                    "Im rho12 has no sign change in |delta| < " + std::to_string(window));

    ExtremumReport report;
    report.window = window;
    report.method = std::string("Im rho12 zero (") + to_string(path) + ")";
    const std::size_t i = *best;
    if (values[i] == 0.0) {
        report.delta0 = grid[i];
    } else {
        report.delta0 = *bisect_root(im_rho12, grid[i], grid[i + 1], 1e-11 * gd);
    }
    report.curvature = sign_of(values[i + 1] - values[i]);
    return report;
}

ExtremumReport chi_extremum_polynomial(const ModelParams& params,
                                       int component, double window_scale)
{
    require_valid(params);
    const double window = checked_window(params, window_scale);
    const RationalChi chi = reconstruct_rational(params, component);

    // Work in t = delta / window so the window maps to [-1, 1].
    Poly n = chi.reduced_numerator();
    Poly d = chi.reduced_denominator();
    double power = 1.0;
    for (Eigen::Index k = 0; k < std::max(n.size(), d.size()); ++k) {
        if (k < n.size())
            n(k) *= power;
        if (k < d.size())
            d(k) *= power;
        power *= window;
    }
    Poly p = subtract(multiply(derivative(n), d), multiply(n, derivative(d)));
    const double pmax = p.cwiseAbs().maxCoeff();
    if (!(pmax > 0.0))
        throw Error(ErrorKind::NoRealRootInWindow, "chi'' is flat");
    p /= pmax;
    Eigen::Index deg = p.size() - 1;
    while (deg > 0 && std::abs(p(deg)) <= 1e-15)
        --deg;
    p.conservativeResize(deg + 1);
    if (deg < 1)
        throw Error(ErrorKind::NoRealRootInWindow, "extremum polynomial is constant");
    const Poly dp = derivative(p);

    ExtremumReport report;
    report.window = window;

    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(p);
    std::vector<double> real_roots;
    for (const auto& r : solver.roots())
        if (std::abs(r.imag()) <= 1e-8 * std::max(1.0, std::abs(r.real())))
            real_roots.push_back(polish(p, dp, r.real()));
    std::sort(real_roots.begin(), real_roots.end());

    bool ill = false;
    std::optional<RootInfo> best;
    for (std::size_t i = 0; i < real_roots.size(); ++i) {
        const double t = real_roots[i];
        RootInfo info;
        info.delta = t * window;
        info.in_window = std::abs(t) < 1.0;
        info.curvature = sign_of(static_cast<double>(evaluate(dp, t)));
        // Nearly coincident pairs come from almost-common factors of N, D.
        const bool paired =
            (i > 0 && real_roots[i] - real_roots[i - 1] < 1e-6) ||
            (i + 1 < real_roots.size() && real_roots[i + 1] - real_roots[i] < 1e-6);
        if (paired)
            info.curvature = 0;
        report.roots.push_back(info);
        if (!info.in_window || info.curvature <= 0)
            continue;
        if (std::abs(static_cast<double>(evaluate(p, t))) > 1e-10 * abs_scale(p, t)) {
            ill = true;
            continue;
        }
        if (!best || std::abs(info.delta) < std::abs(best->delta))
            best = info;
    }

    if (best && !ill) {
        report.delta0 = best->delta;
        report.curvature = best->curvature;
        report.method = "polynomial roots";
        return report;
    }

    // Fallback: sign changes of the derivative from - to + on a dense grid.
    const ScalarFunction pf = [&](double t) { return static_cast<double>(evaluate(p, t)); };
    constexpr int fallback_points = 4001;
    std::optional<double> found;
    double prev_t = -1.0;
    double prev_v = pf(prev_t);
    for (int i = 1; i < fallback_points; ++i) {
        const double t = -1.0 + 2.0 * i / (fallback_points - 1);
        const double v = pf(t);
        if (prev_v < 0.0 && v >= 0.0) {
            const auto root = bisect_root(pf, prev_t, t, 1e-15);
            if (root && (!found || std::abs(*root) < std::abs(*found)))
                found = root;
        }
        prev_t = t;
        prev_v = v;
    }
    if (found) {
        report.delta0 = *found * window;
        report.curvature = 1;
        report.method = "derivative bracketing";
        return report;
    }
    if (ill)
        throw Error(ErrorKind::PolynomialIllConditioned,
                    "extremum roots fail the residual check");
    throw Error(ErrorKind::NoRealRootInWindow,
                "no chi'' minimum in |delta| < " + std::to_string(window));
}

ExtremumReport chi_extremum_search(const ModelParams& params, int component,
                                   SolverPath path, double window_scale)
{
    require_valid(params);
    if (component != 1 && component != 2)
        throw Error(ErrorKind::InvalidParams, "component must be 1 or 2");
    const double window = checked_window(params, window_scale);
    const double gd = gamma_d(params);

    ScalarFunction f;
    std::optional<RationalChi> chi;
    switch (path) {
    case SolverPath::Rational: {
        // Long double evaluation relative to the value at delta = 0 keeps
        // shallow dips resolvable below the double rounding floor.
        chi = reconstruct_rational(params, component);
        const Poly n = chi->reduced_numerator();
        const Poly d = chi->reduced_denominator();
        const long double ref = evaluate(n, 0.0L) / evaluate(d, 0.0L);
        f = [n, d, ref](double delta) {
            return static_cast<double>(evaluate(n, delta) / evaluate(d, delta) - ref);
        };
        break;
    }
    case SolverPath::Adiabatic:
        f = [&](double delta) { return chi_im_adiabatic(params, delta, component); };
        break;
    case SolverPath::Exact:
        f = [&](double delta) {
            return susceptibility(params, solve_steady(params, DetuningSpec{delta, 0.0}),
                                  component).imag();
        };
        break;
    }

    const auto m = grid_minimum(f, window, 1e-10 * gd);
    if (!m)
        throw Error(ErrorKind::NoExtremum, "no chi'' minimum in the window");
    ExtremumReport report;
    report.delta0 = m->x;
    report.curvature = 1;
    report.window = window;
    report.method = std::string("golden section (") + to_string(path) + ")";
    return report;
}

ExtremumReport rho_exc_extremum(const ModelParams& params, SolverPath path,
                                double window_scale)
{
    require_valid(params);
    if (path == SolverPath::Rational)
        throw Error(ErrorKind::Unsupported,
                    "rho_exc extremum needs the exact or adiabatic path");
    const double window = checked_window(params, window_scale);
    const double gd = gamma_d(params);
    const ScalarFunction f = [&](double delta) { return rho_exc_at(params, path, delta); };
    const auto m = grid_minimum(f, window, 1e-10 * gd);
    if (!m)
        throw Error(ErrorKind::NoExtremum, "no rho_exc minimum in the window");
    ExtremumReport report;
    report.delta0 = m->x;
    report.curvature = 1;
    report.window = window;
    report.method = std::string("golden section rho_exc (") + to_string(path) + ")";
    return report;
}

double contrast(const ModelParams& params, SolverPath path)
{
    double delta0 = 0.0;
    try {
        delta0 = rho_exc_extremum(params, path).delta0;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoExtremum)
            return 0.0;
        throw;
    }
    const double background = rho_exc_at(params, path, 20.0 * gamma_d(params));
    if (!(background > 0.0))
        return 0.0;
    // A minimum above the background belongs to an inverted feature, which
    // counts as no resonance.
    return std::max(0.0, (background - rho_exc_at(params, path, delta0)) / background);
}

std::vector<double> default_x_grid()
{
    return {2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3};
}

namespace {

thread_local bool limit_step_active = false;

void check_x_grid(const std::vector<double>& x_grid, std::size_t min_size)
{
    if (x_grid.size() < min_size)
        throw Error(ErrorKind::InvalidParams,
                    "x grid needs at least " + std::to_string(min_size) + " points");
    for (double x : x_grid)
        if (!(x > 0.0) || !std::isfinite(x))
            throw Error(ErrorKind::InvalidParams, "x grid values must be positive");
}

}

SeriesCoeffs series_coefficients(const ModelParams& shape, double ratio,
                                 const std::vector<double>& x_grid)
{
    check_x_grid(x_grid, 2);
    const std::size_t n = x_grid.size();
    SeriesCoeffs out;
    out.x_grid = x_grid;
    out.delta0.assign(n, 0.0);
    out.contrast.assign(n, 0.0);

    parallel_for(n, [&](std::size_t i) {
        const ModelParams p = shape.with_drive(x_grid[i], ratio);
        out.contrast[i] = contrast(p);
        if (out.contrast[i] < resonance_threshold)
            return;
        out.delta0[i] = chi_extremum_polynomial(p, 1).delta0;
    });
    for (std::size_t i = 0; i < n; ++i)
        if (out.contrast[i] < resonance_threshold)
            throw Error(ErrorKind::ResonanceAbsent,
                        "contrast " + std::to_string(out.contrast[i]) +
                            " below threshold at x = " + std::to_string(x_grid[i]));

    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = x_grid[i];
        a(r, 1) = x_grid[i] * x_grid[i];
        y(r) = out.delta0[i];
    }
    const Eigen::Vector2d scale(a.col(0).norm(), a.col(1).norm());
    const Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    out.condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
    if (!(out.condition < 1e10))
        throw Error(ErrorKind::FitIllConditioned,
                    "design matrix condition " + std::to_string(out.condition));

    const Eigen::Vector2d coeff = svd.solve(y).cwiseQuotient(scale);
    out.alpha1 = coeff(0);
    out.alpha2 = coeff(1);
    out.residual = (a * coeff - y).norm();
    out.relative_residual = y.norm() > 0.0 ? out.residual / y.norm() : 0.0;
    out.ratio_finite = out.alpha1 != 0.0;
    out.ratio = out.ratio_finite ? out.alpha2 / out.alpha1
                : out.alpha2 == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                    : std::copysign(std::numeric_limits<double>::infinity(), out.alpha2);

    // With the shift identically zero (symmetric schemes) alpha2/alpha1 is
    // 0/0; report its limit from a symmetric difference in p_2.
    bool absent = true;
    for (std::size_t i = 0; i < n; ++i)
        absent = absent && std::abs(out.delta0[i]) <= 1e-9 * gamma_d(shape.with_drive(x_grid[i], ratio));
    if (absent && !limit_step_active) {
        limit_step_active = true;
        try {
            const double h = 1e-3 * std::max(1.0, std::abs(shape.p_2));
            ModelParams up = shape;
            ModelParams down = shape;
            up.p_2 += h;
            down.p_2 -= h;
            const SeriesCoeffs a = series_coefficients(up, ratio, x_grid);
            const SeriesCoeffs b = series_coefficients(down, ratio, x_grid);
            const double d1 = a.alpha1 - b.alpha1;
            out.ratio_finite = d1 != 0.0;
            out.ratio = out.ratio_finite ? (a.alpha2 - b.alpha2) / d1
                                         : std::numeric_limits<double>::quiet_NaN();
            out.ratio_from_limit = true;
        } catch (...) {
            limit_step_active = false;
            throw;
        }
        limit_step_active = false;
    }
    return out;
}

IntensityCurve shift_vs_intensity(const ModelParams& shape, double ratio,
                                  const std::vector<double>& x_grid)
{
    check_x_grid(x_grid, 1);
    const std::size_t n = x_grid.size();
    IntensityCurve curve;
    curve.x = x_grid;
    curve.delta0.assign(n, 0.0);
    curve.s.assign(n, 0.0);
    curve.extremum.assign(n, false);

    parallel_for(n, [&](std::size_t i) {
        const ModelParams p = shape.with_drive(x_grid[i], ratio);
        curve.delta0[i] = chi_extremum_polynomial(p, 1).delta0;
        curve.s[i] = curve.delta0[i] / (2.0 * std::numbers::pi);
    });

    // Differences below the extraction noise do not count as turning points.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double floor = 1e-9 * gamma_d(shape.with_drive(x_grid[i], ratio));
        const double left = curve.s[i] - curve.s[i - 1];
        const double right = curve.s[i + 1] - curve.s[i];
        if (std::abs(left) > floor && std::abs(right) > floor && left * right < 0.0)
            curve.extremum[i] = true;
    }
    return curve;
}

}
