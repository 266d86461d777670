// One-dimensional bracketed searches used by the shift extractors.

#ifndef CPT_SEARCH_HPP
#define CPT_SEARCH_HPP

#include <functional>
#include <optional>

namespace cpt {

using ScalarFunction = std::function<double(double)>;

/// Bisection for a sign change of f on [lo, hi], stopped when the bracket
/// is narrower than abs_tol. Returns nullopt if f(lo), f(hi) share a sign.
std::optional<double> bisect_root(const ScalarFunction& f, double lo,
                                  double hi, double abs_tol);

struct Minimum
{
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi].
Minimum golden_section_minimize(const ScalarFunction& f, double lo, double hi,
                                double abs_tol);

}

#endif
