#include <doctest.h>

#include <cpt/error.hpp>
#include <cpt/model.hpp>
#include <cpt/weak_coupling.hpp>

using namespace cpt;

namespace {

bool mentions(const std::vector<std::string>& list, const std::string& text)
{
    for (const auto& s : list) {
        if (s.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}

TEST_CASE("uniform preset with weak drive is valid without advisories")
{
    const ModelParams p =
        uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 1.0, -1.0);
    const ValidationReport r = validate(p);
    CHECK(r.ok());
    CHECK(r.advisories.empty());
}

TEST_CASE("zero drive is a hard error")
{
    ModelParams p;
    const ValidationReport r = validate(p);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r.errors, "no drive"));
    CHECK_THROWS_AS(uniform_preset(2.0, 1.0, 0.0, 10.0, 0.0, 0.0, 1.0, 1.0),
                    Error);
}

TEST_CASE("decoherence below the radiative bound is rejected")
{
    ModelParams p;
    p.gamma_exc = 3.0;
    p.branching = BranchingRatios::uniform(3.0);
    p.rabi_1 = p.rabi_2 = 0.01;
    const ValidationReport r = validate(p);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r.errors, "Gamma >= gamma/2 violated"));
}

TEST_CASE("scalar invariants")
{
    ModelParams base = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 1.0, 1.0);

    ModelParams p = base;
    p.omega_34 = 0.0;
    CHECK_FALSE(validate(p).ok());

    p = base;
    p.gamma_12 = -1e-6;
    CHECK_FALSE(validate(p).ok());

    p = base;
    p.rabi_1 = std::nan("");
    CHECK_FALSE(validate(p).ok());

    p = base;
    p.branching.gamma_31 = 0.7;
    CHECK_FALSE(validate(p).ok());
}

TEST_CASE("adiabaticity and detuning advisories do not reject")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.5, 0.1, 1.0, 1.0);
    ValidationReport r = validate(p);
    CHECK(r.ok());
    CHECK(r.advisories.size() == 1);

    p.rabi_1 = 0.01;
    r = validate(p, DetuningSpec{0.0, 0.5});
    CHECK(r.ok());
    CHECK(r.advisories.size() == 1);
}

TEST_CASE("preset branching is exactly gamma/2")
{
    const ModelParams p =
        uniform_preset(1.6, 1.0, 0.0, 10.0, 0.01, 0.02, 0.3, 0.7);
    CHECK(p.branching.gamma_31 == 0.8);
    CHECK(p.branching.gamma_32 == 0.8);
    CHECK(p.branching.gamma_41 == 0.8);
    CHECK(p.branching.gamma_42 == 0.8);
    CHECK(p.branching.asymmetry(1, p.gamma_exc) == 0.0);
    CHECK(p.branching.asymmetry(2, p.gamma_exc) == 0.0);
}

TEST_CASE("fig2 preset configuration and G at omega_34 = Gamma")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.01, 1.0, -1.0);
    p = p.with_drive(1e-4, 9.0);
    CHECK(p.rabi_1 == doctest::Approx(3.0 * p.rabi_2).epsilon(1e-14));
    CHECK(p.drive_power() == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(p.intensity_parameter() == doctest::Approx(1e-4).epsilon(1e-14));

    const ModelParams q =
        uniform_preset(2.0, 1.0, 0.0, 1.0, 0.01, 0.01, 1.0, 1.0);
    CHECK(g_factor(q.omega_34, q.gamma_opt) == 0.5);
}

TEST_CASE("swap exchanges both components")
{
    ModelParams p = uniform_preset(2.0, 1.0, 0.0, 10.0, 0.01, 0.02, 0.3, 0.7);
    p.branching = {0.5, 1.5, 1.2, 0.8};
    const ModelParams s = p.swapped();
    CHECK(s.rabi_1 == p.rabi_2);
    CHECK(s.p_1 == p.p_2);
    CHECK(s.branching.gamma_31 == p.branching.gamma_32);
    CHECK(s.branching.gamma_41 == p.branching.gamma_42);
    CHECK(s.swapped().rabi_1 == p.rabi_1);
}

TEST_CASE("detuning split is symmetric")
{
    const DetuningSpec det{0.2, 0.05};
    CHECK(det.detuning_1() - det.detuning_2() == doctest::Approx(0.2));
    CHECK(det.detuning_1() == doctest::Approx(0.15));
}
