#include <cpt/search.hpp>

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

namespace cpt {

std::optional<double> bisect_root(const ScalarFunction& f, double lo,
                                  double hi, double abs_tol)
{
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        return std::nullopt;
    }
    auto narrow_enough = [abs_tol](double a, double b) {
        return std::abs(b - a) <= abs_tol;
    };
    std::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::bisect(
        [&f](double x) { return f(x); }, lo, hi, narrow_enough, max_iter);
    return 0.5 * (bracket.first + bracket.second);
}

Minimum golden_section_minimize(const ScalarFunction& f, double lo, double hi,
                                double abs_tol)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > abs_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        // Interval stalls at the resolution of doubles.
        if (c >= d) {
            break;
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}
