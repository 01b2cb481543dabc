#include "chl/pde.hpp"

#include <algorithm>
#include <cmath>

#include "chl/errors.hpp"
#include "chl/io.hpp"

namespace chl {

namespace {

// second difference with reflection ghosts, scaled by 1/dx^2
std::vector<double> d2_reflect(const std::vector<double>& u, double dx) {
    int n = static_cast<int>(u.size()) - 1;
    std::vector<double> out(u.size());
    double c = 1.0 / (dx * dx);
    for (int i = 0; i <= n; ++i) {
        double um = (i == 0) ? u[1] : u[static_cast<std::size_t>(i) - 1];
        double up = (i == n) ? u[static_cast<std::size_t>(n) - 1] : u[static_cast<std::size_t>(i) + 1];
        out[static_cast<std::size_t>(i)] = c * (um - 2.0 * u[static_cast<std::size_t>(i)] + up);
    }
    return out;
}

// integer fourth-difference stencil with reflection ghosts (unscaled)
std::vector<double> d4_reflect_raw(const std::vector<double>& u) {
    int n = static_cast<int>(u.size()) - 1;
    auto at = [&](int i) {
        if (i < 0) i = -i;
        if (i > n) i = 2 * n - i;
        return u[static_cast<std::size_t>(i)];
    };
    std::vector<double> out(u.size());
    for (int i = 0; i <= n; ++i)
        out[static_cast<std::size_t>(i)] =
            at(i - 2) - 4.0 * at(i - 1) + 6.0 * at(i) - 4.0 * at(i + 1) + at(i + 2);
    return out;
}

// bands of [c I + k4 D4] with reflection closures, dimension n+1
void fill_bands(int n, double c, double k4, std::vector<double>& sub2,
                std::vector<double>& sub1, std::vector<double>& diag,
                std::vector<double>& sup1, std::vector<double>& sup2) {
    int N1 = n + 1;
    diag.assign(static_cast<std::size_t>(N1), c + 6.0 * k4);
    diag[1] = c + 7.0 * k4;
    diag[static_cast<std::size_t>(N1) - 2] = c + 7.0 * k4;
    sup1.assign(static_cast<std::size_t>(N1) - 1, -4.0 * k4);
    sub1.assign(static_cast<std::size_t>(N1) - 1, -4.0 * k4);
    sup1.front() = -8.0 * k4;
    sub1.back() = -8.0 * k4;
    sup2.assign(static_cast<std::size_t>(N1) - 2, k4);
    sub2.assign(static_cast<std::size_t>(N1) - 2, k4);
    sup2.front() = 2.0 * k4;
    sub2.back() = 2.0 * k4;
}

double trap_of(const std::vector<double>& u, double dx) {
    double s = 0.5 * (u.front() + u.back());
    for (std::size_t i = 1; i + 1 < u.size(); ++i) s += u[i];
    return s * dx;
}

} // namespace

void PdeParams::validate(const Potential& pot) const {
    if (!(eps > 0.0)) throw ValidationFailure("pde params: eps must be positive");
    if (!(rho > 0.0)) throw ValidationFailure("pde params: rho must be positive");
    if (n < 8) throw ValidationFailure("pde params: grid too coarse");
    if (!(1.0 / n <= eps / 8.0 + 1e-15))
        throw ValidationFailure(strf("pde params: grid step 1/%d must not exceed eps/8 = %g",
                                     n, eps / 8.0));
    if (!(dt > 0.0)) throw ValidationFailure("pde params: dt must be positive");
    if (!(t_end >= 0.0)) throw ValidationFailure("pde params: t_end must be nonnegative");
    if (!(tau >= 0.0)) throw ValidationFailure("pde params: tau must be nonnegative");
    double f2 = pot.f2_sup();
    double bound = 8.0 * eps * eps / (f2 * f2);
    if (!(dt <= bound))
        throw ValidationFailure(strf("pde params: dt=%g exceeds the explicit-reaction "
                                     "stability bound 8 eps^2 / sup|F''|^2 = %g", dt, bound));
    if (integrated_form && scheme == PdeScheme::imex_cn)
        throw ValidationFailure("pde params: the antiderivative form supports the first-order "
                                "implicit scheme only");
}

PdeStepper::PdeStepper(const PdeParams& p, const Potential& pot) : p_(p), pot_(pot) {
    p_.validate(pot_);
    int n = p_.n;
    double dx = 1.0 / n;
    double dx4 = dx * dx * dx * dx;
    std::vector<double> sub2, sub1, diag, sup1, sup2;
    if (p_.scheme == PdeScheme::imex_be) {
        double c = p_.tau / p_.dt + 1.0;
        double k4 = p_.dt * p_.eps * p_.eps / dx4;
        fill_bands(n, c, k4, sub2, sub1, diag, sup1, sup2);
    } else {
        double c = 2.0 * p_.tau / p_.dt + 1.0;
        double k4 = 0.5 * p_.dt * p_.eps * p_.eps / dx4;
        fill_bands(n, c, k4, sub2, sub1, diag, sup1, sup2);
    }
    fac_ = std::make_unique<PentaSolver>(n + 1, sub2, sub1, diag, sup1, sup2);
}

void PdeStepper::init(Field u0, Field u1) {
    if (u0.n != p_.n || u1.n != p_.n)
        throw ValidationFailure("pde stepper: initial fields must match the configured grid");
    s_.u = std::move(u0);
    s_.v = std::move(u1);
    s_.t = 0.0;
    s_.mass_u = s_.u.trapezoid();
    s_.mass_v = s_.v.trapezoid();
    nl_prev_.clear();
    have_prev_ = false;
    steps_ = 0;
}

void PdeStepper::step() {
    double dx = s_.u.dx();
    std::vector<double> fp(s_.u.v.size());
    for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = pot_.F1(s_.u.v[i]);
    std::vector<double> nl = d2_reflect(fp, dx);

    std::vector<double> rhs(s_.u.v.size());
    if (p_.scheme == PdeScheme::imex_be) {
        double c = p_.tau / p_.dt + 1.0;
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = c * s_.u.v[i] + p_.tau * s_.v.v[i] + p_.dt * nl[i];
        fac_->solve(rhs);
        // exact scalar flow of the discrete invariants, re-imposed as a uniform
        // shift to cancel solver round-off
        double gam = p_.dt * p_.tau / (p_.tau + p_.dt);
        s_.mass_u += gam * s_.mass_v;
        s_.mass_v *= p_.tau / (p_.tau + p_.dt);
        double shift = s_.mass_u - trap_of(rhs, dx);
        for (double& v : rhs) v += shift;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            double un = rhs[i];
            s_.v.v[i] = (un - s_.u.v[i]) / p_.dt;
            s_.u.v[i] = un;
        }
    } else {
        double c = 2.0 * p_.tau / p_.dt + 1.0;
        double dx4 = dx * dx * dx * dx;
        double k4h = 0.5 * p_.dt * p_.eps * p_.eps / dx4;
        std::vector<double> d4u = d4_reflect_raw(s_.u.v);
        const std::vector<double>& nlp = have_prev_ ? nl_prev_ : nl;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            double nle = have_prev_ ? 1.5 * nl[i] - 0.5 * nlp[i] : nl[i];
            rhs[i] = c * s_.u.v[i] - k4h * d4u[i] + 2.0 * p_.tau * s_.v.v[i] + p_.dt * nle;
        }
        fac_->solve(rhs);
        double gam = 2.0 * p_.tau * p_.dt / (2.0 * p_.tau + p_.dt);
        s_.mass_u += gam * s_.mass_v;
        s_.mass_v *= (2.0 * p_.tau - p_.dt) / (2.0 * p_.tau + p_.dt);
        double shift = s_.mass_u - trap_of(rhs, dx);
        for (double& v : rhs) v += shift;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            double un = rhs[i];
            s_.v.v[i] = 2.0 * (un - s_.u.v[i]) / p_.dt - s_.v.v[i];
            s_.u.v[i] = un;
        }
        nl_prev_ = std::move(nl);
        have_prev_ = true;
    }
    s_.t += p_.dt;
    ++steps_;
}

IntegratedStepper::IntegratedStepper(const PdeParams& p, const Potential& pot)
    : p_(p), pot_(pot) {
    p_.validate(pot_);
    if (!p_.integrated_form)
        throw ValidationFailure("integrated stepper: params must select the antiderivative form");
    int m = p_.n - 1;  // interior unknowns
    double dx = 1.0 / p_.n;
    double dx4 = dx * dx * dx * dx;
    double c = p_.tau / p_.dt + 1.0;
    double k4 = p_.dt * p_.eps * p_.eps / dx4;
    std::vector<double> diag(static_cast<std::size_t>(m), c + 6.0 * k4);
    diag.front() = c + 5.0 * k4;
    diag.back() = c + 5.0 * k4;
    std::vector<double> sup1(static_cast<std::size_t>(m) - 1, -4.0 * k4);
    std::vector<double> sub1 = sup1;
    std::vector<double> sup2(static_cast<std::size_t>(m) - 2, k4);
    std::vector<double> sub2 = sup2;
    fac_ = std::make_unique<PentaSolver>(m, sub2, sub1, diag, sup1, sup2);
}

void IntegratedStepper::init(const Field& u0, const Field& u1) {
    if (u0.n != p_.n || u1.n != p_.n)
        throw ValidationFailure("integrated stepper: initial fields must match the grid");
    int n = p_.n;
    double dx = 1.0 / n;
    U_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    V_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i)
        U_[static_cast<std::size_t>(i) + 1] =
            U_[static_cast<std::size_t>(i)] + 0.5 * dx * (u0[i] + u0[i + 1]);
    for (int i = 0; i < n; ++i)
        V_[static_cast<std::size_t>(i) + 1] =
            V_[static_cast<std::size_t>(i)] + 0.5 * dx * (u1[i] + u1[i + 1]);
    M_ = U_.back();
    // end values are pinned for all time: U(0) = 0, U(1) = M
    V_.front() = 0.0;
    V_.back() = 0.0;
    t_ = 0.0;
}

void IntegratedStepper::step() {
    int n = p_.n;
    int m = n - 1;
    double dx = 1.0 / n;
    double dx4 = dx * dx * dx * dx;
    double c = p_.tau / p_.dt + 1.0;
    double k4 = p_.dt * p_.eps * p_.eps / dx4;

    std::vector<double> flux(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        flux[static_cast<std::size_t>(i)] =
            pot_.F1((U_[static_cast<std::size_t>(i) + 1] - U_[static_cast<std::size_t>(i)]) / dx);
    std::vector<double> rhs(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i)
        rhs[static_cast<std::size_t>(i) - 1] =
            c * U_[static_cast<std::size_t>(i)] + p_.tau * V_[static_cast<std::size_t>(i)] +
            p_.dt * (flux[static_cast<std::size_t>(i)] - flux[static_cast<std::size_t>(i) - 1]) / dx;
    rhs[static_cast<std::size_t>(m) - 1] += 2.0 * k4 * M_;
    if (m >= 2) rhs[static_cast<std::size_t>(m) - 2] -= k4 * M_;
    fac_->solve(rhs);
    for (int i = 1; i <= m; ++i) {
        double un = rhs[static_cast<std::size_t>(i) - 1];
        V_[static_cast<std::size_t>(i)] = (un - U_[static_cast<std::size_t>(i)]) / p_.dt;
        U_[static_cast<std::size_t>(i)] = un;
    }
    t_ += p_.dt;
}

Field IntegratedStepper::u() const {
    int n = p_.n;
    double dx = 1.0 / n;
    Field out(n);
    out.v[0] = (4.0 * U_[1] - U_[2]) / (2.0 * dx);
    for (int i = 1; i < n; ++i)
        out.v[static_cast<std::size_t>(i)] =
            (U_[static_cast<std::size_t>(i) + 1] - U_[static_cast<std::size_t>(i) - 1]) / (2.0 * dx);
    out.v[static_cast<std::size_t>(n)] =
        (3.0 * U_[static_cast<std::size_t>(n)] - 4.0 * U_[static_cast<std::size_t>(n) - 1] +
         U_[static_cast<std::size_t>(n) - 2]) / (2.0 * dx);
    return out;
}

Field spatial_operator(const Field& u, const Potential& pot, double eps) {
    double dx = u.dx();
    std::vector<double> mu = d2_reflect(u.v, dx);
    for (std::size_t i = 0; i < mu.size(); ++i)
        mu[i] = -eps * eps * mu[i] + pot.F1(u.v[i]);
    Field out(u.n);
    out.v = d2_reflect(mu, dx);
    return out;
}

std::pair<Field, Field> initial_data(const LayerVector& h0, VelocityMode mode,
                                     const PdeParams& p, const Potential& pot) {
    ProfileParams pr{p.eps, p.rho, 0.5 * std::min(p.eps, p.eps / p.rho)};
    Field u0 = build_uh(h0, pr, pot, p.n);
    Field v0(p.n);
    if (mode != VelocityMode::zero) {
        // velocity on the slow manifold: sum of profile sensitivities weighted by
        // the reduced transition speeds (centered differences in each h_j)
        auto P = P_of_h(h0, p.eps, pot, AlphaMode::asymptotic);
        const double delta = 1e-6;
        int K = h0.transitions();
        for (int j = 0; j < K; ++j) {
            std::vector<double> hp = h0.raw(), hm = h0.raw();
            hp[static_cast<std::size_t>(j)] += delta;
            hm[static_cast<std::size_t>(j)] -= delta;
            Field up = build_uh(LayerVector::unchecked(hp), pr, pot, p.n);
            Field um = build_uh(LayerVector::unchecked(hm), pr, pot, p.n);
            double w = P[static_cast<std::size_t>(j)] / (2.0 * delta);
            for (std::size_t i = 0; i < v0.v.size(); ++i)
                v0.v[i] += w * (up.v[i] - um.v[i]);
        }
        double mean = v0.trapezoid();
        for (double& v : v0.v) v -= mean;
        if (mode == VelocityMode::reversed)
            for (double& v : v0.v) v = -v;
    }
    return {std::move(u0), std::move(v0)};
}

std::vector<double> extract_layers(const Field& u) {
    if (u.sup_abs() <= 0.5)
        throw NoLayers("extract_layers: field never leaves [-0.5, 0.5]");
    std::vector<double> out;
    double dx = u.dx();
    double guard = 4.0 * dx;
    for (int i = 0; i < u.n; ++i) {
        double a = u[i], b = u[i + 1];
        double xc;
        if (a == 0.0) xc = u.x(i);
        else if (a * b < 0.0) xc = u.x(i) + dx * a / (a - b);
        else continue;
        if (out.empty() || xc - out.back() > guard) out.push_back(xc);
    }
    if (out.empty()) throw NoLayers("extract_layers: no sign changes found");
    return out;
}

double energy(const Field& u, const Potential& pot, double eps) {
    double dx = u.dx();
    double e = 0.0;
    for (int i = 0; i < u.n; ++i) {
        double du = (u[i + 1] - u[i]) / dx;
        e += dx * (0.5 * eps * eps * du * du + 0.5 * (pot.F(u[i]) + pot.F(u[i + 1])));
    }
    return e;
}

PdeDiagnostics diagnostics(const PdeState& s, const PdeParams& p, const Potential& pot) {
    PdeDiagnostics d;
    d.t = s.t;
    d.mass = s.u.trapezoid();
    d.energy = energy(s.u, pot, p.eps);
    try {
        d.crossings = extract_layers(s.u);
    } catch (const NoLayers&) {
        return d;
    }
    if (d.crossings.size() < 2) return d;
    std::vector<double> xi(d.crossings.begin(), d.crossings.end() - 1);
    ProfileParams pr{p.eps, p.rho, 0.5 * std::min(p.eps, p.eps / p.rho)};
    try {
        double hk = solve_hN1(xi, d.mass, pr, pot);
        std::vector<double> href = xi;
        href.push_back(hk);
        auto h = LayerVector::checked(href);
        d.min_gap = h.min_gap();
        Field uref = build_uh(h, pr, pot, p.n);
        Field w(p.n);
        for (std::size_t i = 0; i < w.v.size(); ++i) w.v[i] = s.u.v[i] - uref.v[i];
        d.sup_w = w.sup_abs();
        d.ratio = d.sup_w * std::pow(p.eps, 2.5) * std::exp(pot.a_min() * d.min_gap / p.eps);
        double dx = s.u.dx();
        Field qa(p.n), qb(p.n);
        for (int i = 0; i <= p.n; ++i) {
            double wm = (i == 0) ? w[1] : w[i - 1];
            double wp = (i == p.n) ? w[p.n - 1] : w[i + 1];
            double wx = (wp - wm) / (2.0 * dx);
            if (i == 0 || i == p.n) wx = 0.0;  // reflection symmetry
            double e2 = p.eps * p.eps * wx * wx;
            qa.v[static_cast<std::size_t>(i)] = e2 + pot.F2(uref[i]) * w[i] * w[i];
            qb.v[static_cast<std::size_t>(i)] = e2 + w[i] * w[i];
        }
        d.quad_a = qa.trapezoid();
        d.quad_b = qb.trapezoid();
        d.ref_valid = true;
    } catch (const Error&) {
        d.ref_valid = false;
    }
    return d;
}

} // namespace chl
