#include "chl/standing_wave.hpp"

#include <algorithm>
#include <cmath>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/quadrature.hpp"
#include "chl/root_find.hpp"

namespace chl {

namespace {

// F(mu cos s) - F(mu) without cancellation: the increment mu cos s - mu is
// formed from the half-angle, and for small increments the difference is taken
// as a Simpson quadrature of F' (exact whenever F' is cubic)
std::function<double(double)> make_level_diff(const Potential& pot, double mu) {
    return [pot, mu](double s) {
        double sh = std::sin(0.5 * s);
        double du = -2.0 * mu * sh * sh;
        double u1 = mu + du;
        if (std::fabs(du) <= 1e-3)
            return du / 6.0 * (pot.F1(mu) + 4.0 * pot.F1(mu + 0.5 * du) + pot.F1(u1));
        return pot.F(u1) - pot.F(mu);
    };
}

} // namespace

void StandingWave::Half::build(double mu_in, const Potential& pot, double eps_in) {
    mu = mu_in;
    eps = eps_in;
    level = pot.F(mu);
    double amp = std::fabs(mu);
    double b = 1.0 - amp;

    auto df = make_level_diff(pot, mu);
    double scale = amp * eps;
    g = [df, scale](double s) {
        double d = df(s);
        if (d <= 0.0) d = 5e-324;  // removable endpoint; never hit by quadrature nodes
        return scale * std::sin(s) / std::sqrt(2.0 * d);
    };

    // geometric panels resolve the 1/s stretch between the plateau scale
    // sqrt(b) and O(1)
    const double pi2 = 2.0 * std::atan(1.0);
    double s_min = 1e-3 * std::sqrt(std::max(b, 1e-14));
    edges.assign(1, 0.0);
    for (double s = s_min; s < pi2; s /= 0.6) edges.push_back(s);
    if (edges.back() > pi2 * (1.0 - 1e-12)) edges.back() = pi2;
    else edges.push_back(pi2);

    xcum.assign(edges.size(), 0.0);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        xcum[k + 1] = xcum[k] + gauss16(g, edges[k], edges[k + 1]);
    half_len = xcum.back();
}

double StandingWave::Half::s_of_x(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= half_len) return edges.back();
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(xcum.begin(), xcum.end(), x) - xcum.begin());
    if (k == 0) k = 1;
    --k;  // panel [edges[k], edges[k+1]]
    double lo = edges[k], hi = edges[k + 1];
    double s = lo + (hi - lo) * (x - xcum[k]) / (xcum[k + 1] - xcum[k]);
    for (int it = 0; it < 80; ++it) {
        double fs = xcum[k] + gauss16(g, edges[k], s) - x;
        if (fs > 0.0) hi = s;
        else lo = s;
        double snew = s - fs / g(s);
        if (!(snew > lo && snew < hi)) snew = 0.5 * (lo + hi);
        bool done = std::fabs(snew - s) <= 1e-15 * (1.0 + s);
        s = snew;
        if (done) break;
    }
    return s;
}

double StandingWave::value(double x) const {
    double ax = std::fabs(x) - pad_;
    if (ax <= 0.0) return m_;  // padded plateau at the center
    if (ax <= main_.half_len)
        return m_ * std::cos(main_.s_of_x(ax));
    double xc = cont_.half_len - (ax - main_.half_len);
    if (xc <= 0.0) return cont_.mu;  // plateau guard far into the opposite well
    return cont_.mu * std::cos(cont_.s_of_x(xc));
}

double StandingWave::deriv(double x) const {
    // chain rule through the arclength chart: |phi'(x)| = |mu sin s| / (dx/ds),
    // which reproduces sqrt(2 (F(phi) - F(m))) / eps with the stable difference
    if (x == 0.0) return 0.0;
    double ax = std::fabs(x) - pad_;
    if (ax <= 0.0) return 0.0;
    const Half* half = &main_;
    double s;
    if (ax <= main_.half_len) {
        s = main_.s_of_x(ax);
    } else {
        double xc = cont_.half_len - (ax - main_.half_len);
        if (xc <= 0.0) return 0.0;
        half = &cont_;
        s = cont_.s_of_x(xc);
    }
    double gs = half->g(s);
    double mag = (gs > 0.0) ? std::fabs(half->mu) * std::sin(s) / gs : 0.0;
    double sgn_x = x > 0.0 ? 1.0 : -1.0;
    double sgn_m = m_ > 0.0 ? 1.0 : -1.0;
    return sgn_x * (-sgn_m) * mag;
}

StandingWave solve_phi(double ell, int sign, const Potential& pot, double eps) {
    if (!(eps > 0.0) || !(ell > 0.0))
        throw ValidationFailure(strf("solve_phi: need positive spacing and scale (ell=%g, eps=%g)",
                                     ell, eps));
    if (sign != 1 && sign != -1)
        throw ValidationFailure("solve_phi: sign must be +1 or -1");
    if (ell / eps < 4.0)
        throw NoSolution(strf("solve_phi: ell/eps = %.6g below the existence margin 4", ell / eps));

    // below the amplitude-defect floor the cos chart loses relative accuracy in
    // 1 - |m| (double spacing near 1), and the bump is a pair of fronts around a
    // flat core to within the floor itself; build the chart at the floor and pad
    // the center so the zeros stay pinned at +-ell/2
    const double b_floor = 1e-12;
    const double lb_lo = std::log(b_floor), lb_hi = std::log(0.5);
    auto len_of = [&](double lb) {
        StandingWave::Half h;
        h.build(sign * (1.0 - std::exp(lb)), pot, eps);
        return h.half_len;
    };
    auto G = [&](double lb) { return len_of(lb) - 0.5 * ell; };

    StandingWave w;
    w.ell_ = ell;
    w.eps_ = eps;
    w.sign_ = sign;
    double mu;  // chart amplitude
    if (G(lb_lo) <= 0.0) {
        mu = sign * (1.0 - b_floor);
        w.main_.build(mu, pot, eps);
        w.pad_ = 0.5 * ell - w.main_.half_len;
        // reported level and defect from the tail expansion, accurate to O(b^2)
        auto wc = pot.wells();
        double a = sign > 0 ? wc.a_plus : wc.a_minus;
        double k = sign > 0 ? wc.k_plus : wc.k_minus;
        w.beta_ = k * std::exp(-0.5 * a * ell / eps);
        w.alpha_ = 0.5 * k * k * a * a * std::exp(-a * ell / eps);
        w.m_ = sign * (1.0 - w.beta_);
    } else {
        double b = std::exp(find_root(G, lb_lo, lb_hi, 48));
        mu = sign * (1.0 - b);
        w.m_ = mu;
        w.beta_ = b;
        w.alpha_ = pot.F(mu);
        w.main_.build(mu, pot, eps);
    }

    double mt;
    if (pot.even()) {
        mt = -mu;
    } else {
        // turning value on the opposite side at the same level F(mu)
        double lvl = pot.F(mu);
        auto Gc = [&](double lbt) {
            return pot.F(-sign * (1.0 - std::exp(lbt))) - lvl;
        };
        mt = -sign * (1.0 - std::exp(find_root(Gc, std::log(1e-14), std::log(0.5), 48)));
    }
    w.cont_.build(mt, pot, eps);
    return w;
}

} // namespace chl
