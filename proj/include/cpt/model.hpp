// Physical parameter space of the four-level double-Lambda atom.
//
// All rates and frequencies are expressed in units of the optical
// decoherence rate Gamma (gamma_opt), which defaults to 1.

#ifndef CPT_MODEL_HPP
#define CPT_MODEL_HPP

#include <string>
#include <vector>

namespace cpt {

/// Population transfer rates from the excited levels 3, 4 to the ground
/// levels 1, 2. Each excited level must decay completely into the ground
/// manifold: gamma_31 + gamma_32 = gamma_41 + gamma_42 = gamma_exc.
struct BranchingRatios
{
    double gamma_31 = 1.0;
    double gamma_32 = 1.0;
    double gamma_41 = 1.0;
    double gamma_42 = 1.0;

    /// All four rates equal to gamma_exc / 2.
    static BranchingRatios uniform(double gamma_exc);

    /// Branching asymmetry of the reduced two-state problem for ground
    /// level g (1 or 2). Zero for the uniform model.
    double asymmetry(int g, double gamma_exc) const;
};

struct ModelParams
{
    double gamma_opt = 1.0;   // Gamma, optical decoherence
    double gamma_exc = 2.0;   // gamma = gamma_3 = gamma_4
    double gamma_12 = 0.0;    // ground-state decoherence
    double omega_34 = 10.0;   // excited-state splitting
    double rabi_1 = 0.0;      // half-Rabi frequencies (real)
    double rabi_2 = 0.0;
    double p_1 = 0.0;         // dipole ratios d_g4 / d_g3 (real)
    double p_2 = 0.0;
    BranchingRatios branching = BranchingRatios::uniform(2.0);

    /// Decay of the excited-state coherence rho_34; taken at its radiative
    /// value (gamma_3 + gamma_4) / 2.
    double gamma_34() const { return gamma_exc; }

    /// Omega_1^2 + Omega_2^2
    double drive_power() const { return rabi_1 * rabi_1 + rabi_2 * rabi_2; }

    /// x = (Omega_1^2 + Omega_2^2) / Gamma^2
    double intensity_parameter() const
    {
        return drive_power() / (gamma_opt * gamma_opt);
    }

    /// Copy of *this with the drive rescaled so that the intensity
    /// parameter equals x and Omega_1^2 / Omega_2^2 equals ratio.
    ModelParams with_drive(double x, double ratio) const;

    /// Copy of *this with (Omega_1, p_1) and (Omega_2, p_2) exchanged,
    /// together with the matching branching rates.
    ModelParams swapped() const;
};

/// Two-photon detuning delta = Delta_1 - Delta_2 and common one-photon
/// detuning Delta_0, split as Delta_1 = Delta_0 + delta/2,
/// Delta_2 = Delta_0 - delta/2.
struct DetuningSpec
{
    double delta = 0.0;
    double delta_common = 0.0;

    double detuning_1() const { return delta_common + 0.5 * delta; }
    double detuning_2() const { return delta_common - 0.5 * delta; }
};

struct ValidationReport
{
    std::vector<std::string> errors;
    std::vector<std::string> advisories;

    bool ok() const { return errors.empty(); }
    std::string summary() const;
};

/// Checks the hard invariants of the model and collects soft advisories
/// (adiabaticity Omega <= 0.3 Gamma).
ValidationReport validate(const ModelParams& params);

/// As above, plus the small one-photon detuning advisory for det.
ValidationReport validate(const ModelParams& params, const DetuningSpec& det);

/// Throws Error(InvalidParams) carrying the report summary when validate()
/// reports hard errors.
void require_valid(const ModelParams& params);

/// Uniform relaxation model: gamma_3 = gamma_4 = gamma and all four
/// branching rates gamma/2.
ModelParams uniform_preset(double gamma_exc, double gamma_opt,
                           double gamma_12, double omega_34, double rabi_1,
                           double rabi_2, double p_1, double p_2);

}

#endif
