#include "chl/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/root_find.hpp"

namespace chl {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double err = 0.0;
    double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 12, tol, &err);
    if (!(err <= tol * std::max(1.0, std::fabs(val)) * 10.0))
        throw QuadratureFailure(strf("integrate: error estimate %.3e above target %.3e on [%g, %g]",
                                     err, tol, a, b));
    return val;
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 16>::integrate(f, a, b);
}

double find_root(const std::function<double(double)>& f, double a, double b, int tol_bits) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoRoot(strf("find_root: no sign change on [%.17g, %.17g] (f: %.3e, %.3e)",
                          a, b, fa, fb));
    boost::math::tools::eps_tolerance<double> tol(static_cast<unsigned>(tol_bits));
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

} // namespace chl
