// Shared parameter sets for the unit tests.

#ifndef CPT_TEST_FIXTURES_HPP
#define CPT_TEST_FIXTURES_HPP

#include <cmath>
#include <random>

#include <cpt/model.hpp>

namespace cpt::test {

/// omega_34 = 10 Gamma, Omega_1 = 3 Omega_2, x = 1e-4, p = (1, -1).
inline ModelParams fig2()
{
    return uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 1.0, -1.0)
        .with_drive(1e-4, 9.0);
}

/// Log-uniform Omega in [1e-3, 1e-1], omega_34 in [0.1, 20], p in [-2, 2].
inline ModelParams random_draw(std::mt19937_64& rng, double gamma_12 = 0.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return lo * std::pow(hi / lo, u(rng));
    };
    const double o1 = log_uniform(1e-3, 1e-1);
    const double o2 = log_uniform(1e-3, 1e-1);
    const double w = log_uniform(0.1, 20.0);
    const double p1 = -2.0 + 4.0 * u(rng);
    const double p2 = -2.0 + 4.0 * u(rng);
    return uniform_preset(2.0, 1.0, gamma_12, w, o1, o2, p1, p2);
}

}

#endif
