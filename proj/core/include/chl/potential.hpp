#pragma once

#include <functional>
#include <string>
#include <vector>

namespace chl {

// curvatures and decay prefactors of the two wells at u = +1 / u = -1
struct WellConstants {
    double a_plus;   // sqrt(F''(+1))
    double a_minus;  // sqrt(F''(-1))
    double k_plus;   // tail prefactor of the +1 well
    double k_minus;  // tail prefactor of the -1 well
};

// double-well bulk free energy with wells pinned at u = +/-1.
// F must be nonnegative, vanish exactly at +/-1, and have positive curvature there.
class Potential {
public:
    using Fn = std::function<double(double)>;

    // F(u) = (u^2-1)^2/4; all well constants in closed form
    static Potential quartic();
    // F(u) = sum_k coeffs[k] u^k (ascending powers); validated, constants by quadrature
    static Potential polynomial(std::vector<double> coeffs);

    double F(double u) const { return f_(u); }
    double F1(double u) const { return f1_(u); }
    double F2(double u) const { return f2_(u); }
    double F3(double u) const { return f3_(u); }

    const WellConstants& wells() const { return wc_; }
    // exponential rate used in scaled diagnostics: min of the two well rates
    double a_min() const { return wc_.a_plus < wc_.a_minus ? wc_.a_plus : wc_.a_minus; }
    bool even() const { return even_; }
    const std::string& name() const { return name_; }
    // largest |F''| on |u| <= 1.3; enters the explicit-reaction step bound
    double f2_sup() const { return f2_sup_; }

private:
    Potential(Fn f, Fn f1, Fn f2, Fn f3, WellConstants wc, bool even, std::string name,
              double f2_sup)
        : f_(std::move(f)), f1_(std::move(f1)), f2_(std::move(f2)), f3_(std::move(f3)),
          wc_(wc), even_(even), name_(std::move(name)), f2_sup_(f2_sup) {}

    Fn f_, f1_, f2_, f3_;
    WellConstants wc_;
    bool even_;
    std::string name_;
    double f2_sup_;
};

// K_plus / K_minus via the regularized tail integral over the deflated polynomial
// (closed form bypasses this for the quartic); coefficients ascending, wells at +-1
WellConstants compute_well_constants(const std::vector<double>& coeffs);

} // namespace chl
