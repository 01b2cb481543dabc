#include "chl/profile.hpp"

#include <algorithm>
#include <cmath>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/root_find.hpp"

namespace chl {

namespace {

// smooth 0->1 blend supported on [-1, 1]
double blend(double y) {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return 0.5 * (1.0 + std::tanh(3.0 * y / (1.0 - y * y)));
}

} // namespace

void ProfileParams::validate(int transitions) const {
    if (!(eps > 0.0) || !(rho > 0.0))
        throw ValidationFailure(strf("profile params: eps=%g and rho=%g must be positive", eps, rho));
    if (transitions < 1)
        throw ValidationFailure("profile params: need at least one transition");
    double sep = eps / rho;
    if (!(delta > 0.0 && delta < sep))
        throw ValidationFailure(strf("profile params: need 0 < delta < eps/rho (delta=%g, eps/rho=%g)",
                                     delta, sep));
    if (!(sep < 1.0 / transitions))
        throw ValidationFailure(strf("profile params: need eps/rho < 1/K (eps/rho=%g, K=%d)",
                                     sep, transitions));
}

LayerVector LayerVector::checked(std::vector<double> h) {
    if (h.empty()) throw ValidationFailure("layer vector: empty");
    double prev = 0.0;
    for (double v : h) {
        if (!(v > prev))
            throw ValidationFailure("layer vector: entries must be strictly increasing in (0, 1)");
        prev = v;
    }
    if (!(h.back() < 1.0))
        throw ValidationFailure("layer vector: entries must lie strictly inside (0, 1)");
    return LayerVector(std::move(h));
}

LayerVector LayerVector::unchecked(std::vector<double> h) { return LayerVector(std::move(h)); }

std::vector<double> LayerVector::padded() const {
    std::vector<double> hh;
    hh.reserve(h_.size() + 2);
    hh.push_back(-h_.front());
    hh.insert(hh.end(), h_.begin(), h_.end());
    hh.push_back(2.0 - h_.back());
    return hh;
}

std::vector<double> LayerVector::gap_lengths() const {
    auto hh = padded();
    std::vector<double> l(hh.size() - 1);
    for (std::size_t i = 0; i + 1 < hh.size(); ++i) l[i] = hh[i + 1] - hh[i];
    return l;
}

double LayerVector::min_gap() const {
    auto l = gap_lengths();
    return *std::min_element(l.begin(), l.end());
}

bool LayerVector::in_omega(double eps, double rho) const {
    return min_gap() > eps / rho;
}

AlphaBeta alpha_beta(double r, int sign, AlphaMode mode, const Potential& pot) {
    if (!(r > 0.0)) throw ValidationFailure(strf("alpha_beta: r=%g must be positive", r));
    if (sign != 1 && sign != -1) throw ValidationFailure("alpha_beta: sign must be +1 or -1");
    if (mode == AlphaMode::asymptotic) {
        if (!(r < 0.2))
            throw DomainError(strf("alpha_beta: asymptotic coefficients require r < 0.2 (r=%g)", r));
        auto wc = pot.wells();
        double a = sign > 0 ? wc.a_plus : wc.a_minus;
        double k = sign > 0 ? wc.k_plus : wc.k_minus;
        return {0.5 * k * k * a * a * std::exp(-a / r), k * std::exp(-0.5 * a / r)};
    }
    StandingWave w = solve_phi(1.0, sign, pot, r);
    return {w.alpha(), w.beta()};
}

ProfileBuilder::ProfileBuilder(const LayerVector& h, const Potential& pot, double eps)
    : eps_(eps) {
    int K = h.transitions();
    auto hh = h.padded();
    centers_.resize(K + 1);
    for (int i = 0; i <= K; ++i) centers_[i] = 0.5 * (hh[i] + hh[i + 1]);
    knots_.assign(h.raw().begin(), h.raw().end());
    waves_.reserve(K + 1);
    for (int g = 0; g <= K; ++g) {
        int sign = (g % 2 == 0) ? -1 : +1;  // first gap sits in the lower well
        waves_.push_back(solve_phi(hh[g + 1] - hh[g], sign, pot, eps));
    }
}

double ProfileBuilder::value(double x) const {
    int K = static_cast<int>(knots_.size());
    int j = static_cast<int>(std::upper_bound(centers_.begin(), centers_.end(), x) -
                             centers_.begin()) - 1;
    j = std::clamp(j, 0, K - 1);
    double chi = blend((x - knots_[static_cast<std::size_t>(j)]) / eps_);
    double a = waves_[static_cast<std::size_t>(j)].value(x - centers_[static_cast<std::size_t>(j)]);
    double b = waves_[static_cast<std::size_t>(j) + 1].value(x - centers_[static_cast<std::size_t>(j) + 1]);
    return (1.0 - chi) * a + chi * b;
}

Field build_uh(const LayerVector& h, const ProfileParams& p, const Potential& pot, int n) {
    p.validate(h.transitions());
    if (!h.in_omega(p.eps, p.rho))
        throw DomainError(strf("build_uh: minimal spacing %g at or below eps/rho = %g",
                               h.min_gap(), p.eps / p.rho));
    if (n < 8 || n * p.eps < 8.0)
        throw ValidationFailure(strf("build_uh: grid step 1/%d coarser than eps/8 (eps=%g)", n, p.eps));
    ProfileBuilder b(h, pot, p.eps);
    Field u(n);
    for (int i = 0; i <= n; ++i) u.v[static_cast<std::size_t>(i)] = b.value(u.x(i));
    return u;
}

double mass(const LayerVector& h, const ProfileParams& p, const Potential& pot) {
    p.validate(h.transitions());
    ProfileBuilder b(h, pot, p.eps);
    int nq = std::max(4096, 2 * static_cast<int>(std::ceil(32.0 / p.eps)));
    if (nq % 2) ++nq;
    double dx = 1.0 / nq;
    double s_odd = 0.0, s_even = 0.0;
    for (int i = 1; i < nq; i += 2) s_odd += b.value(i * dx);
    for (int i = 2; i < nq; i += 2) s_even += b.value(i * dx);
    return dx / 3.0 * (b.value(0.0) + 4.0 * s_odd + 2.0 * s_even + b.value(1.0));
}

ResidualReport ac_residual(const Field& u, const Potential& pot, double eps) {
    int n = u.n;
    double dx = u.dx();
    double c = eps * eps / (dx * dx);
    ResidualReport rep;
    rep.r = Field(n);
    for (int i = 0; i <= n; ++i) {
        double um = (i == 0) ? u[1] : u[i - 1];
        double up = (i == n) ? u[n - 1] : u[i + 1];
        rep.r.v[static_cast<std::size_t>(i)] = -c * (um - 2.0 * u[i] + up) + pot.F1(u[i]);
    }
    rep.sup = rep.r.sup_abs();
    Field sq(n);
    for (int i = 0; i <= n; ++i) sq.v[static_cast<std::size_t>(i)] = rep.r[i] * rep.r[i];
    rep.l2 = std::sqrt(sq.trapezoid());
    return rep;
}

double barrier_psi(const LayerVector& h, const ProfileParams& p, const Potential& pot) {
    auto l = h.gap_lengths();
    int K = h.transitions();
    std::vector<double> a(l.size());
    auto wc = pot.wells();
    for (std::size_t g = 0; g < l.size(); ++g) {
        int sign = (g % 2 == 0) ? -1 : +1;
        double A = sign > 0 ? wc.a_plus : wc.a_minus;
        double Kp = sign > 0 ? wc.k_plus : wc.k_minus;
        a[g] = 0.5 * Kp * Kp * A * A * std::exp(-A * l[g] / p.eps);
    }
    double psi = 0.0;
    for (int j = 0; j < K; ++j) {
        double d = a[static_cast<std::size_t>(j) + 1] - a[static_cast<std::size_t>(j)];
        psi += d * d;
    }
    return psi;
}

double solve_hN1(const std::vector<double>& xi, double mass_target,
                 const ProfileParams& p, const Potential& pot) {
    if (xi.empty()) throw ValidationFailure("solve_hN1: need at least one fixed transition");
    // the recovered configuration must stay admissible and every gap must carry
    // a standing wave (existence margin 4 eps)
    double sep = std::max(p.eps / p.rho, 4.0 * p.eps);
    double prev = 0.0;
    for (double v : xi) {
        if (!(v > prev))
            throw ValidationFailure("solve_hN1: fixed transitions must be strictly increasing in (0,1)");
        prev = v;
    }
    if (!(2.0 * xi.front() > sep))
        throw DomainError("solve_hN1: first transition too close to the boundary");
    for (std::size_t i = 0; i + 1 < xi.size(); ++i)
        if (!(xi[i + 1] - xi[i] > sep))
            throw DomainError("solve_hN1: fixed transitions violate the admissible spacing");

    double lo = xi.back() + sep * (1.0 + 1e-9);
    double hi = 1.0 - 0.5 * sep * (1.0 + 1e-9);
    if (!(lo < hi))
        throw NoRoot(strf("solve_hN1: empty admissible bracket [%g, %g]", lo, hi));

    auto f = [&](double hk) {
        std::vector<double> full(xi);
        full.push_back(hk);
        return mass(LayerVector::unchecked(std::move(full)), p, pot) - mass_target;
    };
    return find_root(f, lo, hi, 47);
}

} // namespace chl
