// Rotating-frame density-matrix equations of the double-Lambda atom:
// exact steady state and a fixed-step time integrator used as its oracle.

#ifndef CPT_STEADY_STATE_HPP
#define CPT_STEADY_STATE_HPP

#include <array>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include <cpt/model.hpp>

namespace cpt {

using Complex = std::complex<double>;

/// Number of real degrees of freedom: 4 populations + 6 complex coherences.
inline constexpr int state_dim = 16;

using RealState = Eigen::Matrix<double, state_dim, 1>;
using RealMatrix = Eigen::Matrix<double, state_dim, state_dim>;

/// 4x4 Hermitian density matrix in the rotating frame. Levels are numbered
/// 1..4 as in the level scheme: 1, 2 ground; 3 resonant excited; 4
/// off-resonant excited. Off-diagonal entries are the slowly varying
/// (tilde) coherences.
///
/// Real layout used by the linear system:
///   [rho11, rho22, rho33, rho44,
///    Re rho12, Im rho12, Re rho13, Im rho13, Re rho14, Im rho14,
///    Re rho23, Im rho23, Re rho24, Im rho24, Re rho34, Im rho34]
class DensityMatrix
{
public:
    DensityMatrix() : m_rho(Eigen::Matrix4cd::Zero()) {}
    explicit DensityMatrix(const Eigen::Matrix4cd& rho) : m_rho(rho) {}

    /// Pure state with all population in `level`.
    static DensityMatrix ground(int level);

    static DensityMatrix from_real(const RealState& x);
    RealState to_real() const;

    /// Element rho_nm, 1-based level indices.
    Complex operator()(int n, int m) const { return m_rho(n - 1, m - 1); }
    double population(int n) const { return m_rho(n - 1, n - 1).real(); }
    Complex rho12() const { return m_rho(0, 1); }

    const Eigen::Matrix4cd& matrix() const { return m_rho; }

    double trace() const { return m_rho.trace().real(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

    /// Max-norm distance between the two matrices.
    double distance(const DensityMatrix& other) const;

private:
    Eigen::Matrix4cd m_rho;
};

/// Real form of the rotating-frame equations with the trace row
/// substituted. matrix * x = rhs.
struct LinearSystem
{
    RealMatrix matrix;
    RealState rhs;
    std::array<std::string, state_dim> labels;
    int trace_row = 0;
};

/// Time derivative of rho under the rotating-frame master equation.
DensityMatrix derivative(const ModelParams& params, const DetuningSpec& det,
                         const DensityMatrix& rho);

/// Real generator L with d/dt x = L x, before the trace substitution.
RealMatrix liouvillian(const ModelParams& params, const DetuningSpec& det);

/// Steady-state system; the rho11 row is replaced by sum_n rho_nn = 1.
LinearSystem build_system(const ModelParams& params, const DetuningSpec& det);

struct SteadyState
{
    DensityMatrix rho;
    double condition = 0.0;  // 1-norm condition estimate of the system
    double residual = 0.0;   // max-norm of L x over all rows
};

/// Solves without the conditioning check. Throws SingularSystem.
SteadyState solve_steady_detailed(const ModelParams& params,
                                  const DetuningSpec& det);

/// Throws SingularSystem, or IllConditioned when the condition estimate
/// exceeds 1e12 (the message carries the estimate).
DensityMatrix solve_steady(const ModelParams& params, const DetuningSpec& det);

/// Largest step accepted by evolve(): 0.1 / max(Gamma, omega_34, |Delta_g|).
double max_step(const ModelParams& params, const DetuningSpec& det);

/// Classical RK4 with a fixed step h = t_final / ceil(t_final / dt).
/// Long runs apply the one-step propagator by repeated squaring.
/// Throws StepTooLarge when dt > max_step().
DensityMatrix evolve(const ModelParams& params, const DetuningSpec& det,
                     const DensityMatrix& rho0, double t_final, double dt);

using StepObserver = std::function<void(double, const DensityMatrix&)>;

/// Same integrator stepped explicitly on the 4x4 matrix, calling
/// observer(t, rho) after every step.
DensityMatrix evolve(const ModelParams& params, const DetuningSpec& det,
                     const DensityMatrix& rho0, double t_final, double dt,
                     const StepObserver& observer);

}

#endif
