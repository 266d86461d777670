// Adiabatic two-state solution templated on the scalar type, so that the
// rational reconstruction can sample it in extended precision.

#ifndef CPT_REDUCED_IMPL_HPP
#define CPT_REDUCED_IMPL_HPP

#include <cmath>
#include <complex>

#include <cpt/error.hpp>
#include <cpt/model.hpp>

namespace cpt::detail {

template <typename T>
struct ReducedCoefficientsT
{
    T a = 0;
    T f = 0;
    std::complex<T> b;
    std::complex<T> c;
    std::complex<T> d;
    std::complex<T> h;
    T delta_gamma_1 = 0;
    T delta_gamma_2 = 0;
};

template <typename T>
struct ReducedSolutionT
{
    T rho11 = 0;
    std::complex<T> rho12;
    std::complex<T> rho13;
    std::complex<T> rho14;
    std::complex<T> rho23;
    std::complex<T> rho24;
};

template <typename T>
struct ComplexDetuningsT
{
    std::complex<T> d13;
    std::complex<T> d14;
    std::complex<T> d23;
    std::complex<T> d24;
    std::complex<T> d12;
};

// delta_g3 = i Delta_g + Gamma, delta_g4 = i(Delta_g - omega_34) + Gamma,
// delta_12 = i delta + Gamma_12.
template <typename T>
ComplexDetuningsT<T> complex_detunings(const ModelParams& params, T delta,
                                       T delta_common)
{
    using C = std::complex<T>;
    const T big = params.gamma_opt;
    const T w = params.omega_34;
    const T d1 = delta_common + delta / 2;
    const T d2 = delta_common - delta / 2;
    return {C(big, d1), C(big, d1 - w), C(big, d2), C(big, d2 - w),
            C(T(params.gamma_12), delta)};
}

template <typename T>
ReducedCoefficientsT<T> reduced_coefficients(const ModelParams& params,
                                             T delta, T delta_common)
{
    const auto [d13, d14, d23, d24, d12] =
        complex_detunings<T>(params, delta, delta_common);
    const BranchingRatios& br = params.branching;
    const T o1 = params.rabi_1;
    const T o2 = params.rabi_2;
    const T p1 = params.p_1;
    const T p2 = params.p_2;
    const T g31 = br.gamma_31;
    const T g32 = br.gamma_32;
    const T one = 1;

    ReducedCoefficientsT<T> k;
    k.delta_gamma_1 = br.asymmetry(1, params.gamma_exc);
    k.delta_gamma_2 = br.asymmetry(2, params.gamma_exc);

    const auto d23c = std::conj(d23);
    const auto d24c = std::conj(d24);

    const auto a1 = o1 * o1 / (g31 * d13)
        * (one + p1 * p1 * (one - k.delta_gamma_1) * d13 / d14);
    const auto a2 = o2 * o2 / (g32 * d23)
        * (one + p2 * p2 * (one - k.delta_gamma_2) * d23 / d24);
    k.a = -(a1 + a2).real();

    k.b = -o1 * o2 / (g31 * d13)
            * (one + p1 * p2 * (one - k.delta_gamma_1) * d13 / d14)
        + o1 * o2 / (g32 * d23c)
            * (one + p1 * p2 * (one - k.delta_gamma_2) * d23c / d24c);

    const auto upper = o1 * o2 / d23c * (one + p2 * p1 * d23c / d24c);
    const auto lower = o1 * o2 / d13 * (one + p2 * p1 * d13 / d14);
    k.c = upper - lower;
    k.h = upper;

    k.d = -o1 * o1 / d23c * (one + p1 * p1 * d23c / d24c)
        - o2 * o2 / d13 * (one + p2 * p2 * d13 / d14) - d12;

    k.f = -o2 * o2 / g32
        * (one / d23 * (one + p2 * p2 * (one - k.delta_gamma_2) * d23 / d24))
              .real();
    return k;
}

template <typename T>
ReducedSolutionT<T> reduced_solution(const ModelParams& params, T delta,
                                     T delta_common)
{
    using C = std::complex<T>;
    const ReducedCoefficientsT<T> k =
        reduced_coefficients<T>(params, delta, delta_common);
    const T dd = std::norm(k.d);
    // a rho11 + Re{b rho12} = f with rho12 = (h - c rho11) / d.
    const T num = k.f * dd - (k.b * k.h * std::conj(k.d)).real();
    const T den = k.a * dd - (k.b * k.c * std::conj(k.d)).real();
    const T scale =
        std::abs(k.a) * dd + std::abs(k.b) * std::abs(k.c) * std::sqrt(dd);
    if (!(std::abs(den) > T(1e-14) * scale)) {
        throw Error(ErrorKind::DegenerateReduction,
                    "two-state determinant vanishes");
    }

    ReducedSolutionT<T> sol;
    sol.rho11 = num / den;
    sol.rho12 = (k.h - k.c * sol.rho11) / k.d;

    const auto [d13, d14, d23, d24, d12] =
        complex_detunings<T>(params, delta, delta_common);
    const T o1 = params.rabi_1;
    const T o2 = params.rabi_2;
    const T p1 = params.p_1;
    const T p2 = params.p_2;
    const C i(0, 1);
    const T rho22 = T(1) - sol.rho11;
    const C rho21 = std::conj(sol.rho12);
    sol.rho13 = -i * (o2 * sol.rho12 + o1 * sol.rho11) / d13;
    sol.rho14 = -i * (p2 * o2 * sol.rho12 + p1 * o1 * sol.rho11) / d14;
    sol.rho23 = -i * (o1 * rho21 + o2 * rho22) / d23;
    sol.rho24 = -i * (p1 * o1 * rho21 + p2 * o2 * rho22) / d24;
    return sol;
}

// Im chi_g from the reduced optical coherences; Omega_g must be non-zero.
template <typename T>
T chi_im_reduced(const ModelParams& params, const ReducedSolutionT<T>& red,
                 int component)
{
    const T o = component == 1 ? params.rabi_1 : params.rabi_2;
    const T p = component == 1 ? params.p_1 : params.p_2;
    const auto g3 = component == 1 ? red.rho13 : red.rho23;
    const auto g4 = component == 1 ? red.rho14 : red.rho24;
    return ((std::conj(g3) + p * std::conj(g4)) / o).imag();
}

}

#endif
