#include "chl/potential.hpp"

#include <cmath>
#include <utility>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/quadrature.hpp"

namespace chl {

namespace {

double poly_eval(const std::vector<double>& c, double u) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * u + c[k];
    return s;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

double sup_f2(const Potential::Fn& f2) {
    double m = 0.0;
    for (int i = 0; i <= 2600; ++i) {
        double u = -1.3 + 2.6 * i / 2600.0;
        m = std::max(m, std::fabs(f2(u)));
    }
    return m;
}

// synthetic division by (u - r); the remainder (~1e-12 after well validation) is dropped
std::vector<double> poly_deflate(std::vector<double> c, double r) {
    std::vector<double> q(c.size() - 1, 0.0);
    double carry = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = c[k] + r * carry;
    }
    return q;
}

// one-sided tail prefactor K = 2 exp( int_0^1 [ A/sqrt(2F(side*t)) - 1/(1-t) ] dt ).
// The integrand has a removable point at t=1 where F vanishes to second order, so direct
// evaluation in monomial form drowns in rounding noise. Dividing out the double root,
// F(u) = q(u) (u - side)^2, collapses the bracket to a cancellation-free ratio:
//   side=+1:  g(t) =  s(t)  / [ sqrt(q(t))  ( sqrt(q(1))  + sqrt(q(t))  ) ],  q(u)-q(1)  = (u-1) s(u)
//   side=-1:  g(t) = -w(-t) / [ sqrt(q(-t)) ( sqrt(q(-1)) + sqrt(q(-t)) ) ],  q(u)-q(-1) = (u+1) w(u)
double tail_prefactor(const std::vector<double>& coeffs, int side) {
    double r = static_cast<double>(side);
    auto q = poly_deflate(poly_deflate(coeffs, r), r);
    double q_well = poly_eval(q, r);
    auto shifted = q;
    shifted[0] -= q_well;
    auto s = poly_deflate(shifted, r);
    auto g = [&](double t) {
        double qt = poly_eval(q, r * t);
        double num = static_cast<double>(side) * poly_eval(s, r * t);
        return num / (std::sqrt(qt) * (std::sqrt(q_well) + std::sqrt(qt)));
    };
    return 2.0 * std::exp(integrate(g, 0.0, 1.0, 1e-12));
}

} // namespace

WellConstants compute_well_constants(const std::vector<double>& coeffs) {
    auto d2 = poly_derive(poly_derive(coeffs));
    double f2p = poly_eval(d2, 1.0), f2m = poly_eval(d2, -1.0);
    if (!(f2p > 0.0) || !(f2m > 0.0))
        throw ValidationFailure("well constants: F'' must be positive at both wells");
    WellConstants wc;
    wc.a_plus = std::sqrt(f2p);
    wc.a_minus = std::sqrt(f2m);
    wc.k_plus = tail_prefactor(coeffs, +1);
    wc.k_minus = tail_prefactor(coeffs, -1);
    return wc;
}

Potential Potential::quartic() {
    // factored forms keep full relative accuracy next to the wells
    Fn f = [](double u) { double p = (u - 1.0) * (u + 1.0); return 0.25 * p * p; };
    Fn f1 = [](double u) { return u * (u - 1.0) * (u + 1.0); };
    Fn f2 = [](double u) { return 3.0 * u * u - 1.0; };
    Fn f3 = [](double u) { return 6.0 * u; };
    WellConstants wc{std::sqrt(2.0), std::sqrt(2.0), 4.0, 4.0};
    return Potential(std::move(f), std::move(f1), std::move(f2), std::move(f3), wc, true,
                     "quartic", 3.0 * 1.69 - 1.0);
}

Potential Potential::polynomial(std::vector<double> coeffs) {
    if (coeffs.size() < 3) throw ValidationFailure("polynomial potential: need degree >= 2");
    auto d1 = poly_derive(coeffs);
    auto d2 = poly_derive(d1);
    auto d3 = poly_derive(d2);
    Fn f = [coeffs](double u) { return poly_eval(coeffs, u); };
    Fn f1 = [d1](double u) { return poly_eval(d1, u); };
    Fn f2 = [d2](double u) { return poly_eval(d2, u); };
    Fn f3 = [d3](double u) { return poly_eval(d3, u); };

    // double-well with wells pinned at +-1
    for (double w : {-1.0, 1.0}) {
        if (std::fabs(f(w)) > 1e-12)
            throw ValidationFailure(strf("polynomial potential: F(%+g) = %.3e, expected 0", w, f(w)));
        if (std::fabs(f1(w)) > 1e-12)
            throw ValidationFailure(strf("polynomial potential: F'(%+g) = %.3e, expected 0", w, f1(w)));
        if (f2(w) <= 1e-8)
            throw ValidationFailure(strf("polynomial potential: F''(%+g) = %.3e, expected > 0", w, f2(w)));
    }
    for (int i = 0; i <= 4000; ++i) {
        double u = -2.0 + 4.0 * i / 4000.0;
        double v = f(u);
        if (v < -1e-12)
            throw ValidationFailure(strf("polynomial potential: F(%g) = %.3e < 0", u, v));
        double dist = std::min(std::fabs(u - 1.0), std::fabs(u + 1.0));
        if (dist > 1e-2 && v < 1e-10)
            throw ValidationFailure(strf("polynomial potential: interior zero near u = %g", u));
    }

    bool even = true;
    for (std::size_t k = 1; k < coeffs.size(); k += 2)
        if (coeffs[k] != 0.0) { even = false; break; }

    WellConstants wc = compute_well_constants(coeffs);
    double f2s = sup_f2(f2);
    return Potential(std::move(f), std::move(f1), std::move(f2), std::move(f3), wc, even,
                     "polynomial", f2s);
}

} // namespace chl
