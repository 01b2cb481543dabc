#pragma once

#include <functional>
#include <vector>

#include "chl/potential.hpp"

namespace chl {

// single-bump equilibrium on [-ell/2, ell/2]: eps^2 phi'' = F'(phi), phi(+-ell/2) = 0,
// sign*phi > 0 inside, extremum m at the center. value()/deriv() extend past the
// zeros along the same first integral (the dip into the opposite well), which is
// what profile blending needs.
class StandingWave {
public:
    double ell() const { return ell_; }
    double eps() const { return eps_; }
    int sign() const { return sign_; }
    double m() const { return m_; }                    // signed extremum
    double amplitude() const { return m_ < 0 ? -m_ : m_; }
    double alpha() const { return alpha_; }           // F(m)
    double beta() const { return beta_; }             // 1 - |m|

    // phi at signed distance x from the bump center; valid for |x| up to
    // ell/2 + (half-length of the continuation bump)
    double value(double x) const;
    double deriv(double x) const;

    // half-bump parametrized by the angle s: phi = mu cos s, x(s) from the
    // extremum (s=0) to the zero (s=pi/2, x=half_len)
    struct Half {
        double mu = 0.0, eps = 1.0, level = 0.0, half_len = 0.0;
        std::vector<double> edges, xcum;
        std::function<double(double)> g;  // dx/ds

        void build(double mu, const Potential& pot, double eps);
        double s_of_x(double x) const;
    };

private:
    StandingWave() = default;

    double ell_ = 0.0, eps_ = 0.0, m_ = 0.0, alpha_ = 0.0, beta_ = 0.0;
    // plateau padding for very wide bumps: once the amplitude defect 1-|m| drops
    // to the resolution floor of the cos chart, the chart is built at the floor
    // and the center is extended by a flat stretch so the zeros stay at +-ell/2
    double pad_ = 0.0;
    int sign_ = 1;
    Half main_, cont_;

    friend StandingWave solve_phi(double, int, const Potential&, double);
};

// throws NoSolution below the existence margin ell/eps >= 4
StandingWave solve_phi(double ell, int sign, const Potential& pot, double eps);

} // namespace chl
