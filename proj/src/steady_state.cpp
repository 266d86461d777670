#include <cpt/steady_state.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <cpt/error.hpp>

namespace cpt {

namespace {

constexpr std::array<std::pair<int, int>, 6> coherence_pairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr double max_condition = 1e12;

Eigen::Matrix4cd hamiltonian(const ModelParams& p, const DetuningSpec& det)
{
    // Energies relative to level 3 in the frame rotating with both fields.
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(0, 0) = det.detuning_1();
    h(1, 1) = det.detuning_2();
    h(3, 3) = p.omega_34;
    h(0, 2) = h(2, 0) = -p.rabi_1;
    h(0, 3) = h(3, 0) = -p.p_1 * p.rabi_1;
    h(1, 2) = h(2, 1) = -p.rabi_2;
    h(1, 3) = h(3, 1) = -p.p_2 * p.rabi_2;
    return h;
}

Eigen::Matrix4d decoherence(const ModelParams& p)
{
    const double g = p.gamma_opt;
    Eigen::Matrix4d rates;
    rates << 0.0, p.gamma_12, g, g,
             p.gamma_12, 0.0, g, g,
             g, g, 0.0, p.gamma_34(),
             g, g, p.gamma_34(), 0.0;
    return rates;
}

RealMatrix one_step_propagator(const RealMatrix& generator, double h)
{
    const RealMatrix a = h * generator;
    const RealMatrix a2 = a * a;
    const RealMatrix a3 = a2 * a;
    const RealMatrix a4 = a3 * a;
    return RealMatrix::Identity() + a + a2 / 2.0 + a3 / 6.0 + a4 / 24.0;
}

struct StepPlan
{
    long long steps = 0;
    double h = 0.0;
};

StepPlan plan_steps(const ModelParams& params, const DetuningSpec& det,
                    double t_final, double dt)
{
    require_valid(params);
    if (!(t_final >= 0.0) || !(dt > 0.0)) {
        throw Error(ErrorKind::InvalidParams,
                    "evolve requires t_final >= 0 and dt > 0");
    }
    const double limit = max_step(params, det);
    if (dt > limit) {
        std::ostringstream os;
        os << "dt = " << dt << " exceeds " << limit;
        throw Error(ErrorKind::StepTooLarge, os.str());
    }
    StepPlan plan;
    if (t_final == 0.0) {
        return plan;
    }
    plan.steps = static_cast<long long>(std::ceil(t_final / dt));
    plan.h = t_final / static_cast<double>(plan.steps);
    return plan;
}

}

DensityMatrix DensityMatrix::ground(int level)
{
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(level - 1, level - 1) = 1.0;
    return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::from_real(const RealState& x)
{
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) {
        rho(k, k) = x[k];
    }
    for (std::size_t n = 0; n < coherence_pairs.size(); ++n) {
        const auto [i, j] = coherence_pairs[n];
        const Complex z(x[4 + 2 * n], x[5 + 2 * n]);
        rho(i, j) = z;
        rho(j, i) = std::conj(z);
    }
    return DensityMatrix(rho);
}

RealState DensityMatrix::to_real() const
{
    RealState x;
    for (int k = 0; k < 4; ++k) {
        x[k] = m_rho(k, k).real();
    }
    for (std::size_t n = 0; n < coherence_pairs.size(); ++n) {
        const auto [i, j] = coherence_pairs[n];
        x[4 + 2 * n] = m_rho(i, j).real();
        x[5 + 2 * n] = m_rho(i, j).imag();
    }
    return x;
}

double DensityMatrix::hermiticity_error() const
{
    return (m_rho - m_rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const
{
    const Eigen::Matrix4cd herm = 0.5 * (m_rho + m_rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
        herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::distance(const DensityMatrix& other) const
{
    return (m_rho - other.m_rho).cwiseAbs().maxCoeff();
}

DensityMatrix derivative(const ModelParams& params, const DetuningSpec& det,
                         const DensityMatrix& state)
{
    const Eigen::Matrix4cd& rho = state.matrix();
    const Eigen::Matrix4cd h = hamiltonian(params, det);
    const Complex i_unit(0.0, 1.0);

    Eigen::Matrix4cd out = -i_unit * (h * rho - rho * h);
    out.array() -= decoherence(params).cast<Complex>().array() * rho.array();

    const auto& b = params.branching;
    const double r33 = rho(2, 2).real();
    const double r44 = rho(3, 3).real();
    out(0, 0) += b.gamma_31 * r33 + b.gamma_41 * r44;
    out(1, 1) += b.gamma_32 * r33 + b.gamma_42 * r44;
    out(2, 2) -= params.gamma_exc * r33;
    out(3, 3) -= params.gamma_exc * r44;
    return DensityMatrix(out);
}

RealMatrix liouvillian(const ModelParams& params, const DetuningSpec& det)
{
    RealMatrix l;
    for (int k = 0; k < state_dim; ++k) {
        const DensityMatrix unit =
            DensityMatrix::from_real(RealState::Unit(k));
        l.col(k) = derivative(params, det, unit).to_real();
    }
    return l;
}

LinearSystem build_system(const ModelParams& params, const DetuningSpec& det)
{
    LinearSystem sys;
    sys.matrix = liouvillian(params, det);
    sys.rhs = RealState::Zero();
    sys.trace_row = 0;
    sys.matrix.row(0).setZero();
    sys.matrix.row(0).head<4>().setOnes();
    sys.rhs[0] = 1.0;

    sys.labels = {"trace: rho11+rho22+rho33+rho44 = 1",
                  "d/dt rho22",
                  "d/dt rho33",
                  "d/dt rho44",
                  "Re d/dt rho12",
                  "Im d/dt rho12",
                  "Re d/dt rho13",
                  "Im d/dt rho13",
                  "Re d/dt rho14",
                  "Im d/dt rho14",
                  "Re d/dt rho23",
                  "Im d/dt rho23",
                  "Re d/dt rho24",
                  "Im d/dt rho24",
                  "Re d/dt rho34",
                  "Im d/dt rho34"};
    return sys;
}

SteadyState solve_steady_detailed(const ModelParams& params,
                                  const DetuningSpec& det)
{
    require_valid(params);
    const LinearSystem sys = build_system(params, det);
    Eigen::PartialPivLU<RealMatrix> lu(sys.matrix);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0)) {
        throw Error(ErrorKind::SingularSystem,
                    "steady-state system is singular");
    }
    const RealState x = lu.solve(sys.rhs);
    if (!x.allFinite()) {
        throw Error(ErrorKind::SingularSystem,
                    "steady-state solution is not finite");
    }

    SteadyState out;
    out.rho = DensityMatrix::from_real(x);
    out.condition = 1.0 / rcond;
    out.residual = (liouvillian(params, det) * x).cwiseAbs().maxCoeff();
    return out;
}

DensityMatrix solve_steady(const ModelParams& params, const DetuningSpec& det)
{
    SteadyState ss = solve_steady_detailed(params, det);
    if (ss.condition > max_condition) {
        std::ostringstream os;
        os << "condition estimate " << ss.condition << " exceeds "
           << max_condition << " (residual " << ss.residual << ")";
        throw Error(ErrorKind::IllConditioned, os.str());
    }
    return ss.rho;
}

double max_step(const ModelParams& params, const DetuningSpec& det)
{
    const double fastest = std::max(
        {params.gamma_opt, params.omega_34, std::abs(det.detuning_1()),
         std::abs(det.detuning_2())});
    return 0.1 / fastest;
}

DensityMatrix evolve(const ModelParams& params, const DetuningSpec& det,
                     const DensityMatrix& rho0, double t_final, double dt)
{
    const StepPlan plan = plan_steps(params, det, t_final, dt);
    if (plan.steps == 0) {
        return rho0;
    }
    RealMatrix power = one_step_propagator(liouvillian(params, det), plan.h);
    RealState x = rho0.to_real();
    // P^N x by binary powering; powers of P commute.
    for (long long n = plan.steps; n > 0; n >>= 1) {
        if (n & 1) {
            x = power * x;
        }
        if (n > 1) {
            power = power * power;
        }
    }
    return DensityMatrix::from_real(x);
}

DensityMatrix evolve(const ModelParams& params, const DetuningSpec& det,
                     const DensityMatrix& rho0, double t_final, double dt,
                     const StepObserver& observer)
{
    const StepPlan plan = plan_steps(params, det, t_final, dt);
    const double h = plan.h;
    Eigen::Matrix4cd rho = rho0.matrix();
    auto f = [&](const Eigen::Matrix4cd& r) {
        return derivative(params, det, DensityMatrix(r)).matrix();
    };
    for (long long n = 0; n < plan.steps; ++n) {
        const Eigen::Matrix4cd k1 = f(rho);
        const Eigen::Matrix4cd k2 = f(rho + 0.5 * h * k1);
        const Eigen::Matrix4cd k3 = f(rho + 0.5 * h * k2);
        const Eigen::Matrix4cd k4 = f(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (observer) {
            observer(static_cast<double>(n + 1) * h, DensityMatrix(rho));
        }
    }
    return DensityMatrix(rho);
}

}
