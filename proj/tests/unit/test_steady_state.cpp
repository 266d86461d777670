#include <doctest.h>

#include <cmath>
#include <random>

#include <cpt/error.hpp>
#include <cpt/steady_state.hpp>
#include <cpt/weak_coupling.hpp>

#include "fixtures.hpp"

using namespace cpt;

namespace {

void check_physical(const DensityMatrix& rho)
{
    CHECK(rho.hermiticity_error() <= 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
    CHECK(rho.min_eigenvalue() >= -1e-10);
}

}

TEST_CASE("population rows sum to zero before the trace substitution")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 5; ++k) {
        const ModelParams p = test::random_draw(rng, 1e-6);
        const RealMatrix l = liouvillian(p, DetuningSpec{3e-4, 0.01});
        const auto sum = l.row(0) + l.row(1) + l.row(2) + l.row(3);
        CHECK(sum.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("trace row replaces the rho11 row")
{
    const LinearSystem sys = build_system(test::fig2(), DetuningSpec{});
    CHECK(sys.trace_row == 0);
    CHECK(sys.rhs[0] == 1.0);
    CHECK(sys.matrix.row(0).head<4>().sum() == 4.0);
    CHECK(sys.matrix.row(0).tail<12>().cwiseAbs().sum() == 0.0);
    CHECK(sys.labels[0].find("trace") != std::string::npos);
}

TEST_CASE("level 4 decouples when p1 = p2 = 0")
{
    ModelParams p = test::fig2();
    p.p_1 = p.p_2 = 0.0;
    const RealMatrix l = liouvillian(p, DetuningSpec{1e-5, 0.0});
    // Components touching level 4: rho44 (3), rho14 (8,9), rho24 (12,13),
    // rho34 (14,15).
    const int level4[] = {3, 8, 9, 12, 13, 14, 15};
    const int lambda[] = {0, 1, 2, 4, 5, 6, 7, 10, 11};
    // Level-4 variables are not driven by the Lambda subsystem.
    for (int r : level4) {
        for (int c : lambda) {
            CHECK(l(r, c) == 0.0);
        }
    }
}

TEST_CASE("fig2 preset system is nonsingular with small residual")
{
    const SteadyState ss = solve_steady_detailed(test::fig2(), DetuningSpec{});
    CHECK(std::isfinite(ss.condition));
    CHECK(ss.condition < 1e12);
    CHECK(ss.residual <= 1e-10);
    check_physical(ss.rho);
}

TEST_CASE("optical pumping into the uncoupled ground state")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.0, 0.0, 0.0);
    for (double delta : {0.0, 1e-3, -0.05}) {
        const DensityMatrix rho = solve_steady(p, DetuningSpec{delta, 0.0});
        CHECK(rho.population(2) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(rho.population(1)) <= 1e-12);
        CHECK(std::abs(rho.population(3)) <= 1e-12);
        CHECK(std::abs(rho.rho12()) <= 1e-12);
    }
}

TEST_CASE("three-level dark state at exact resonance")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.02, 0.01, 0.0, 0.0);
    const DensityMatrix rho = solve_steady(p, DetuningSpec{});
    const double expected = -0.02 * 0.01 / p.drive_power();
    CHECK(rho.rho12().real() == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(rho.rho12().imag()) <= 1e-12);
    CHECK(std::abs(rho.population(3)) <= 1e-12);
    CHECK(std::abs(rho.population(4)) <= 1e-12);
}

TEST_CASE("solution satisfies the density-matrix invariants")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const ModelParams p = test::random_draw(rng, k % 2 ? 1e-6 : 0.0);
        const double gd = gamma_d(p);
        const SteadyState ss =
            solve_steady_detailed(p, DetuningSpec{0.7 * gd, 0.0});
        CHECK(ss.residual <= 1e-10);
        check_physical(ss.rho);
    }
}

TEST_CASE("swap symmetry maps the solution by relabeling")
{
    std::mt19937_64 rng(17);
    for (int k = 0; k < 6; ++k) {
        const ModelParams p = test::random_draw(rng);
        const double delta = 1.3 * gamma_d(p);
        const DensityMatrix a = solve_steady(p, DetuningSpec{delta, 0.0});
        const DensityMatrix b =
            solve_steady(p.swapped(), DetuningSpec{-delta, 0.0});
        CHECK(std::abs(a.population(1) - b.population(2)) <= 1e-10);
        CHECK(std::abs(a.population(2) - b.population(1)) <= 1e-10);
        CHECK(std::abs(a.rho12() - std::conj(b.rho12())) <= 1e-10);
    }
}

TEST_CASE("p = 0 reduces to the three-level Lambda steady state")
{
    for (double scale : {1e-2, 5e-3}) {
        const ModelParams p =
            uniform_preset(2.0, 1.0, 0.0, 5.0, 2.0 * scale, scale, 0.0, 0.0);
        const double gd = gamma_d(p);
        for (double u : {-2.0, 0.0, 0.5, 3.0}) {
            const double delta = u * gd;
            const Complex exact =
                solve_steady(p, DetuningSpec{delta, 0.0}).rho12();
            const Complex closed = rho12_three_level(p, delta);
            CHECK(std::abs(exact - closed) / std::abs(closed)
                  <= 10.0 * p.drive_power());
        }
    }
}

TEST_CASE("evolve returns rho0 at t = 0 and rejects large steps")
{
    const ModelParams p = test::fig2();
    const DensityMatrix rho0 = DensityMatrix::ground(1);
    CHECK(evolve(p, DetuningSpec{}, rho0, 0.0, 0.01).distance(rho0) == 0.0);
    CHECK_THROWS_AS(evolve(p, DetuningSpec{}, rho0, 1.0, 0.02), Error);
    try {
        evolve(p, DetuningSpec{}, rho0, 1.0, 0.02);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StepTooLarge);
    }
}

TEST_CASE("stepping preserves hermiticity and trace")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 3.0, 0.1, 0.08, 1.0, -0.5);
    Eigen::Matrix4cd start = Eigen::Matrix4cd::Zero();
    start(0, 0) = 0.5;
    start(1, 1) = 0.5;
    start(0, 1) = start(1, 0) = 0.3;
    double worst_herm = 0.0;
    double worst_trace = 0.0;
    const DensityMatrix end = evolve(
        p, DetuningSpec{0.01, 0.0}, DensityMatrix(start), 20.0, 0.01,
        [&](double, const DensityMatrix& rho) {
            worst_herm = std::max(worst_herm, rho.hermiticity_error());
            worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
        });
    CHECK(worst_herm <= 1e-10);
    CHECK(worst_trace <= 1e-9);
    // Stepping and propagator powering are the same map.
    const DensityMatrix powered =
        evolve(p, DetuningSpec{0.01, 0.0}, DensityMatrix(start), 20.0, 0.01);
    CHECK(end.distance(powered) <= 1e-12);
}

TEST_CASE("RK4 is fourth order")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 2.0, 0.2, 0.1, 1.0, 0.5);
    const DetuningSpec det{0.05, 0.0};
    const DensityMatrix rho0 = DensityMatrix::ground(1);
    const DensityMatrix fine = evolve(p, det, rho0, 4.0, 0.0025);
    const double e1 = evolve(p, det, rho0, 4.0, 0.04).distance(fine);
    const double e2 = evolve(p, det, rho0, 4.0, 0.02).distance(fine);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("long-time evolution converges to the steady state")
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 3; ++k) {
        const ModelParams p = test::random_draw(rng, k == 1 ? 1e-6 : 0.0);
        const DetuningSpec det{0.5 * gamma_d(p), 0.0};
        const DensityMatrix ss = solve_steady(p, det);
        const double t = 60.0 / gamma_d(p);
        const DensityMatrix late =
            evolve(p, det, DensityMatrix::ground(1), t, max_step(p, det));
        CHECK(late.distance(ss) <= 1e-8);
    }
}
