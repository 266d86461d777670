#include <doctest.h>

#include <cmath>
#include <random>

#include <cpt/error.hpp>
#include <cpt/observables.hpp>
#include <cpt/steady_state.hpp>
#include <cpt/weak_coupling.hpp>

#include "fixtures.hpp"

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

// Closed weak-coupling form of chi''_g.
double chi_im_weak(const ModelParams& p, double delta, int g)
{
    const double other = g == 1 ? p.rabi_2 : p.rabi_1;
    const double o2 = other * other;
    const double gd = gamma_d(p);
    const double dd = delta - stark_shift(p);
    return -o2 / (p.gamma_opt * gd)
        * (gd * gd + 2.0 * distortion_shift(p) * dd) / (gd * gd + dd * dd)
        + o2 / p.drive_power();
}

}

TEST_CASE("dark state has no optical response")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.02, 0.01, 0.0, 0.0);
    const DensityMatrix rho = solve_steady(p, DetuningSpec{});
    const Susceptibilities chi = susceptibility(p, rho);
    CHECK(std::abs(chi.chi1) <= 1e-10);
    CHECK(std::abs(chi.chi2) <= 1e-10);
    CHECK(excited_population(rho) <= 1e-12);
}

TEST_CASE("zero drive component is rejected")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.02, 0.0, 0.0, 0.0);
    const DensityMatrix rho = solve_steady(p, DetuningSpec{});
    CHECK(kind_of([&] { susceptibility(p, rho, 2); }) == ErrorKind::ZeroDrive);
    CHECK(kind_of([&] { susceptibility(p, rho); }) == ErrorKind::ZeroDrive);
    CHECK_NOTHROW(susceptibility(p, rho, 1));
    // Single-field pump-out: everything ends in |2>.
    CHECK(excited_population(rho) <= 1e-12);
    CHECK(excited_population_identity_error(p, rho) <= 1e-12);
}

TEST_CASE("excited population identity holds for every solved point")
{
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        const ModelParams p = test::random_draw(rng, k % 3 == 0 ? 1e-6 : 0.0);
        for (double u : {-5.0, 0.0, 0.3, 2.0}) {
            const DensityMatrix rho =
                solve_steady(p, DetuningSpec{u * gamma_d(p), 0.0});
            CHECK(excited_population_identity_error(p, rho) <= 1e-10);
            const double rho_exc = excited_population(rho);
            CHECK(rho_exc >= 0.0);
            CHECK(rho_exc <= 1.0);
            CHECK(rho.population(1) + rho.population(2) + rho_exc
                  <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("chi'' approaches the background away from resonance")
{
    const ModelParams p = test::fig2();
    const double delta = stark_shift(p) + 50.0 * gamma_d(p);
    const DensityMatrix rho = solve_steady(p, DetuningSpec{delta, 0.0});
    for (int g : {1, 2}) {
        const double other = g == 1 ? p.rabi_2 : p.rabi_1;
        const double background = other * other / p.drive_power();
        const double chi = susceptibility(p, rho, g).imag();
        // Level-4 absorption adds a second-order background ~ G Gamma/omega_34.
        const double g2 = std::pow(g_factor(p.omega_34, p.gamma_opt), 2);
        CHECK(std::abs(chi - background) <= 2.0 * g2 * background);
        CHECK(std::abs(chi - chi_im_weak(p, delta, g)) <= 2.0 * g2 * background);
    }
}

TEST_CASE("exact chi'' follows the weak closed form to second order")
{
    // Deviation from the first-order form falls ~4x per doubling of omega_34.
    ModelParams p = test::fig2();
    double previous = 0.0;
    for (double w : {20.0, 40.0, 80.0}) {
        p.omega_34 = w;
        const double gd = gamma_d(p);
        double worst = 0.0;
        for (int comp : {1, 2}) {
            const double other = comp == 1 ? p.rabi_2 : p.rabi_1;
            const double background = other * other / p.drive_power();
            for (double u = -8.0; u <= 8.0; u += 0.5) {
                const double delta = stark_shift(p) + u * gd;
                const DensityMatrix rho =
                    solve_steady(p, DetuningSpec{delta, 0.0});
                const double exact = susceptibility(p, rho, comp).imag();
                worst = std::max(worst, std::abs(exact - chi_im_weak(p, delta, comp))
                                            / background);
            }
        }
        const double g = g_factor(w, 1.0);
        CHECK(worst <= 10.0 * g * g);
        if (previous > 0.0) {
            CHECK(worst / previous <= 0.35);
        }
        previous = worst;
    }
}

TEST_CASE("closed-form tables at p = 0")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 0.0, 0.0);
    const RationalChi r = appendix_b_coefficients(p);
    CHECK(r.source == CoefficientSource::AppendixEvaluated);
    CHECK(r.A(7) == -4.0);
    CHECK(r.B(9) == doctest::Approx(-p.drive_power()).epsilon(1e-15));
    CHECK(r.A(6) == 0.0);
    CHECK(r.B(8) == 0.0);
}

TEST_CASE("closed-form leading ratio A7/B9")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 5; ++k) {
        const ModelParams p = test::random_draw(rng);
        const RationalChi r = appendix_b_coefficients(p);
        const double t1 = 1.0 + p.p_1 * p.p_1;
        const double t2 = 1.0 + p.p_2 * p.p_2;
        const double tilde = t1 * p.rabi_1 * p.rabi_1 + t2 * p.rabi_2 * p.rabi_2;
        CHECK(r.A(7) / r.B(9) == doctest::Approx(4.0 * t1 * t2 / tilde));
    }
}

TEST_CASE("rational form needs Gamma_12 = 0")
{
    ModelParams p = test::fig2();
    p.gamma_12 = 1e-6;
    CHECK(kind_of([&] { appendix_b_coefficients(p); })
          == ErrorKind::Unsupported);
    CHECK(kind_of([&] { reconstruct_rational(p); }) == ErrorKind::Unsupported);
}

TEST_CASE("reconstruction reproduces the adiabatic chi'' out of sample")
{
    std::mt19937_64 rng(43);
    for (int k = 0; k < 6; ++k) {
        const ModelParams p = test::random_draw(rng);
        for (int comp : {1, 2}) {
            const RationalChi r = reconstruct_rational(p, comp);
            CHECK(r.source == CoefficientSource::Reconstructed);
            CHECK(r.reduced_degree == 6);
            CHECK(r.A(0) == 0.0);
            CHECK(r.B(0) == 0.0);
            const double gd = gamma_d(p);
            std::uniform_real_distribution<double> u(-40.0, 40.0);
            for (int i = 0; i < 100; ++i) {
                const double delta = u(rng) * gd;
                const double direct = chi_im_adiabatic(p, delta, comp);
                CHECK(std::abs(r.chi_im(delta) - direct)
                      <= 1e-10 * std::abs(direct));
            }
        }
    }
}

TEST_CASE("rational and adiabatic agree over the resonance window")
{
    std::mt19937_64 rng(47);
    for (int k = 0; k < 5; ++k) {
        const ModelParams p = test::random_draw(rng);
        const RationalChi r = reconstruct_rational(p, 1);
        const double gd = gamma_d(p);
        double peak = 0.0;
        double worst = 0.0;
        for (double u = -20.0; u <= 20.0; u += 0.05) {
            const double direct = chi_im_adiabatic(p, u * gd, 1);
            peak = std::max(peak, std::abs(direct));
            worst = std::max(worst, std::abs(r.chi_im(u * gd) - direct));
        }
        CHECK(worst <= 1e-8 * peak);
    }
}

TEST_CASE("p = 0 reconstruction is the three-level line")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.02, 0.01, 0.0, 0.0);
    const RationalChi r = reconstruct_rational(p, 1);
    CHECK(r.reduced_degree < 6);
    const double gd = gamma_d(p);
    const double bg = p.rabi_2 * p.rabi_2 / p.drive_power();
    for (double u : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
        const double delta = u * gd;
        // Lorentzian dip of full depth at delta = 0, corrected only by the
        // one-photon detunings Delta_g = +-delta/2.
        const double lorentz = bg * (1.0 - gd * gd / (gd * gd + delta * delta));
        CHECK(std::abs(r.chi_im(delta) - lorentz) <= 10.0 * p.drive_power() * bg);
        CHECK(r.chi_im(delta)
              == doctest::Approx(chi_im_adiabatic(p, delta, 1)).epsilon(1e-10));
    }
}

TEST_CASE("swap maps the rational coefficients with alternating signs")
{
    std::mt19937_64 rng(53);
    for (int k = 0; k < 4; ++k) {
        const ModelParams p = test::random_draw(rng);
        const RationalChi a = reconstruct_rational(p.swapped(), 1);
        const RationalChi b = reconstruct_rational(p, 2);
        for (int n = 1; n <= 7; ++n) {
            const double sign = n % 2 ? 1.0 : -1.0;
            CHECK(a.A(n) == doctest::Approx(sign * b.A(n)).epsilon(1e-7).scale(1e-12 * std::abs(a.A(7))));
        }
        for (int n = 1; n <= 9; ++n) {
            const double sign = n % 2 ? 1.0 : -1.0;
            CHECK(a.B(n) == doctest::Approx(sign * b.B(n)).epsilon(1e-7).scale(1e-12 * std::abs(a.B(9))));
        }
    }
}

TEST_CASE("closed-form coefficients that survive the symbolic check")
{
    // A1, A5, A6, A7, B1, B4, B6, B8, B9 agree with the exact reduction;
    // B6 with the (-4 Gamma^2 + p~1^2 Omega_1^2 + p~2^2 Omega_2^2) reading.
    std::mt19937_64 rng(59);
    for (int k = 0; k < 5; ++k) {
        const ModelParams p = test::random_draw(rng);
        const RationalChi fit = reconstruct_rational(p);
        const RationalChi printed = appendix_b_coefficients(p);
        for (int n : {1, 5, 6, 7}) {
            CHECK(fit.A(n) == doctest::Approx(printed.A(n)).epsilon(1e-8));
        }
        for (int n : {1, 4, 6, 8, 9}) {
            CHECK(fit.B(n) == doctest::Approx(printed.B(n)).epsilon(1e-8));
        }
    }
}

TEST_CASE("exact and adiabatic chi'' differ at order Omega^2")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 2.0, 0.06, 0.04, 1.0, -0.5);
    double previous = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double gd = gamma_d(p);
        double worst = 0.0;
        double peak = 0.0;
        for (double u = -10.0; u <= 10.0; u += 0.25) {
            const double delta = u * gd;
            const DensityMatrix rho = solve_steady(p, DetuningSpec{delta, 0.0});
            const double exact = susceptibility(p, rho, 1).imag();
            const double adiabatic = chi_im_adiabatic(p, delta, 1);
            worst = std::max(worst, std::abs(exact - adiabatic));
            peak = std::max(peak, std::abs(exact));
        }
        const double rel = worst / peak;
        CHECK(rel <= 10.0 * p.drive_power());
        if (previous > 0.0) {
            CHECK(previous / rel == doctest::Approx(4.0).epsilon(0.1));
        }
        previous = rel;
        p = p.with_drive(p.intensity_parameter() / 4.0,
                         p.rabi_1 * p.rabi_1 / (p.rabi_2 * p.rabi_2));
    }
}

TEST_CASE("spectrum paths")
{
    const ModelParams p = test::fig2();
    const double gd = gamma_d(p);
    std::vector<double> grid;
    for (int k = -40; k <= 40; ++k) {
        grid.push_back(k * 0.25 * gd);
    }
    const Spectrum exact = spectrum(p, grid, SolverPath::Exact);
    const Spectrum adiabatic = spectrum(p, grid, SolverPath::Adiabatic);
    const Spectrum rational = spectrum(p, grid, SolverPath::Rational);
    CHECK(exact.state_path == SolverPath::Exact);
    CHECK(rational.chi_path == SolverPath::Rational);
    CHECK(rational.state_path == SolverPath::Adiabatic);
    REQUIRE(exact.points.size() == grid.size());

    // Im rho12 changes sign between grid points around 1.584e-5.
    int crossings = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto& a = exact.points[i - 1];
        const auto& b = exact.points[i];
        if (a.rho12_im * b.rho12_im < 0.0) {
            ++crossings;
            CHECK(a.delta <= 1.584e-5);
            CHECK(b.delta >= 1.584e-5);
        }
    }
    CHECK(crossings == 1);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(rational.points[i].chi1_im
              == doctest::Approx(adiabatic.points[i].chi1_im).epsilon(1e-9));
        CHECK(rational.points[i].rho_exc
              == doctest::Approx(adiabatic.points[i].rho_exc).epsilon(1e-9));
        CHECK(adiabatic.points[i].chi2_im
              == doctest::Approx(exact.points[i].chi2_im).epsilon(1e-3));
    }
}

TEST_CASE("spectrum grid edge cases")
{
    const ModelParams p = test::fig2();
    const Spectrum one = spectrum(p, {2e-5});
    REQUIRE(one.points.size() == 1);
    const DensityMatrix rho = solve_steady(p, DetuningSpec{2e-5, 0.0});
    CHECK(one.points[0].rho12_im == rho.rho12().imag());
    CHECK(one.points[0].rho_exc == excited_population(rho));

    CHECK(kind_of([&] { spectrum(p, {1e-5, 0.0}); })
          == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { spectrum(p, {0.0}, SolverPath::Rational, 0.1); })
          == ErrorKind::Unsupported);
    CHECK(spectrum(p, {}).points.empty());
}

TEST_CASE("solver path names")
{
    CHECK(parse_solver_path("rational") == SolverPath::Rational);
    CHECK(std::string(to_string(SolverPath::Adiabatic)) == "adiabatic");
    CHECK(kind_of([] { parse_solver_path("fast"); }) == ErrorKind::Config);
}
