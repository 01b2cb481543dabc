#include "chl/rk45.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "chl/errors.hpp"
#include "chl/io.hpp"

namespace chl {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double scaled_norm(const std::vector<double>& e, const std::vector<double>& y0,
                   const std::vector<double>& y1, double atol, double rtol) {
    double s = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        double sk = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
        double q = e[i] / sk;
        s += q * q;
    }
    return std::sqrt(s / static_cast<double>(e.size()));
}

double initial_step(const OdeRhs& f, double t0, const std::vector<double>& y0,
                    const std::vector<double>& f0, double t_span, const OdeOptions& opt) {
    std::size_t n = y0.size();
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sk = opt.atol + opt.rtol * std::fabs(y0[i]);
        double q0 = y0[i] / sk, q1 = f0[i] / sk;
        d0 += q0 * q0;
        d1n += q1 * q1;
    }
    d0 = std::sqrt(d0 / static_cast<double>(n));
    d1n = std::sqrt(d1n / static_cast<double>(n));
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t_span);
    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    f(t0 + h0, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sk = opt.atol + opt.rtol * std::fabs(y0[i]);
        double q = (f1[i] - f0[i]) / sk;
        d2 += q * q;
    }
    d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;
    double h1 = (std::max(d1n, d2) <= 1e-15)
                    ? std::max(1e-6, h0 * 1e-3)
                    : std::pow(0.01 / std::max(d1n, d2), 0.2);
    double h = std::min({100.0 * h0, h1, t_span});
    if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
    return h;
}

// locate the first zero of g on an accepted step by bisection on the interpolant
double locate_event(const OdeEvent& g, const DenseSeg& seg, double g_hi_t,
                    std::vector<double>& work) {
    double lo = seg.t0, hi = g_hi_t;
    for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::fabs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        seg.eval(mid, work);
        if (g(mid, work) > 0.0) lo = mid;
        else hi = mid;
    }
    return hi;
}

// dense LU with partial pivoting for the small stiff-stage Newton systems
void lu_solve_dense(std::vector<double>& A, std::vector<double>& b, int n) {
    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(A[static_cast<std::size_t>(k * n + k)]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::fabs(A[static_cast<std::size_t>(i * n + k)]);
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw StepFailure("stiff stage: singular Newton matrix");
        piv[static_cast<std::size_t>(k)] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j)
                std::swap(A[static_cast<std::size_t>(k * n + j)], A[static_cast<std::size_t>(p * n + j)]);
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
        }
        double pivv = A[static_cast<std::size_t>(k * n + k)];
        for (int i = k + 1; i < n; ++i) {
            double m = A[static_cast<std::size_t>(i * n + k)] / pivv;
            A[static_cast<std::size_t>(i * n + k)] = m;
            for (int j = k + 1; j < n; ++j)
                A[static_cast<std::size_t>(i * n + j)] -= m * A[static_cast<std::size_t>(k * n + j)];
            b[static_cast<std::size_t>(i)] -= m * b[static_cast<std::size_t>(k)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= A[static_cast<std::size_t>(i * n + j)] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s / A[static_cast<std::size_t>(i * n + i)];
    }
}

// solve z - a f(tz, z) = rhs by modified Newton with a finite-difference Jacobian
void implicit_stage(const OdeRhs& f, double tz, double a, const std::vector<double>& rhs,
                    std::vector<double>& z) {
    int n = static_cast<int>(z.size());
    std::vector<double> fz(z.size()), fpert(z.size()), J(z.size() * z.size());
    for (int attempt = 0; attempt < 2; ++attempt) {
        f(tz, z, fz);
        std::vector<double> zp = z;
        for (int j = 0; j < n; ++j) {
            double delta = 1e-7 * std::max(1.0, std::fabs(z[static_cast<std::size_t>(j)]));
            zp[static_cast<std::size_t>(j)] += delta;
            f(tz, zp, fpert);
            zp[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(j)];
            for (int i = 0; i < n; ++i) {
                double jij = (fpert[static_cast<std::size_t>(i)] - fz[static_cast<std::size_t>(i)]) / delta;
                J[static_cast<std::size_t>(i * n + j)] = (i == j ? 1.0 : 0.0) - a * jij;
            }
        }
        for (int it = 0; it < 30; ++it) {
            f(tz, z, fz);
            std::vector<double> res(z.size());
            double rn = 0.0, zn = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                res[i] = z[i] - a * fz[i] - rhs[i];
                rn = std::max(rn, std::fabs(res[i]));
                zn = std::max(zn, std::fabs(z[i]));
            }
            if (rn <= 1e-13 * (1.0 + zn)) return;
            std::vector<double> A = J;
            lu_solve_dense(A, res, n);
            for (std::size_t i = 0; i < z.size(); ++i) z[i] -= res[i];
        }
    }
    throw StepFailure("stiff stage: Newton iteration did not converge");
}

OdeResult integrate_stiff(const OdeRhs& f, std::vector<double> y0, double t0, double t1,
                          const OdeOptions& opt, const OdeEvent& event) {
    const double gamma = 2.0 - std::sqrt(2.0);
    OdeResult res;
    res.y_end = y0;
    res.t_end = t0;
    if (event && event(t0, y0) <= 0.0)
        throw EventAtStart("integrate_ode: event active at the initial state");
    double t = t0;
    std::vector<double> y = std::move(y0);
    std::vector<double> fy(y.size()), z(y.size()), ynew(y.size()), work(y.size());
    std::vector<double> zeros(y.size(), 0.0);
    while (t < t1) {
        if (res.n_steps++ > opt.max_steps)
            throw StepFailure("integrate_ode: step budget exhausted (stiff)");
        double dt = std::min(opt.stiff_dt, t1 - t);
        f(t, y, fy);
        std::vector<double> rhs(y.size());
        double a = 0.5 * gamma * dt;
        for (std::size_t i = 0; i < y.size(); ++i) rhs[i] = y[i] + a * fy[i];
        z = y;
        implicit_stage(f, t + gamma * dt, a, rhs, z);
        double w1 = 1.0 / (gamma * (2.0 - gamma));
        double w0 = (1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));
        double a2 = dt * (1.0 - gamma) / (2.0 - gamma);
        for (std::size_t i = 0; i < y.size(); ++i) rhs[i] = w1 * z[i] - w0 * y[i];
        ynew = z;
        implicit_stage(f, t + dt, a2, rhs, ynew);

        DenseSeg seg;
        seg.t0 = t;
        seg.h = dt;
        seg.r1 = y;
        seg.r2.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) seg.r2[i] = ynew[i] - y[i];
        seg.r3 = zeros;
        seg.r4 = zeros;
        seg.r5 = zeros;
        res.segs.push_back(seg);

        t += dt;
        y = ynew;
        if (event && event(t, y) <= 0.0) {
            double te = locate_event(event, res.segs.back(), t, work);
            res.segs.back().eval(te, y);
            res.t_end = te;
            res.y_end = y;
            res.reason = StopReason::event;
            return res;
        }
    }
    res.t_end = t;
    res.y_end = y;
    res.reason = StopReason::reached_end;
    return res;
}

} // namespace

void DenseSeg::eval(double t, std::vector<double>& out) const {
    double th = (h > 0.0) ? (t - t0) / h : 0.0;
    th = std::clamp(th, 0.0, 1.0);
    double th1 = 1.0 - th;
    out.resize(r1.size());
    for (std::size_t i = 0; i < r1.size(); ++i)
        out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
}

void OdeResult::sample(double t, std::vector<double>& out) const {
    if (segs.empty()) {
        out = y_end;
        return;
    }
    auto it = std::upper_bound(segs.begin(), segs.end(), t,
                               [](double v, const DenseSeg& s) { return v < s.t0; });
    if (it != segs.begin()) --it;
    it->eval(t, out);
}

OdeResult integrate_ode(const OdeRhs& f, std::vector<double> y0, double t0, double t1,
                        const OdeOptions& opt, const OdeEvent& event) {
    if (y0.empty()) throw ValidationFailure("integrate_ode: empty state");
    if (!(t1 >= t0)) throw ValidationFailure("integrate_ode: t1 must not precede t0");
    if (t1 == t0) {
        OdeResult res;
        res.y_end = std::move(y0);
        res.t_end = t0;
        return res;
    }
    if (opt.stiff) return integrate_stiff(f, std::move(y0), t0, t1, opt, event);

    const std::size_t n = y0.size();
    OdeResult res;
    if (event && event(t0, y0) <= 0.0)
        throw EventAtStart("integrate_ode: event active at the initial state");

    std::vector<double> y = std::move(y0);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n), err(n),
        work(n);
    double t = t0;
    f(t, y, k1);
    double h = initial_step(f, t, y, k1, t1 - t0, opt);
    bool last_rejected = false;

    while (t < t1) {
        if (res.n_steps + res.n_rejected > opt.max_steps)
            throw StepFailure(strf("integrate_ode: step budget exhausted at t=%g", t));
        if (!(t + h > t)) throw StepFailure(strf("integrate_ode: step underflow at t=%g", t));
        if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
        h = std::min(h, t1 - t);

        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, yt, k2);
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, yt, k3);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, yt, k4);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, yt, k5);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        f(t + h, yt, k6);
        for (std::size_t i = 0; i < n; ++i)
            y5[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                a76 * k6[i]);
        f(t + h, y5, k7);
        for (std::size_t i = 0; i < n; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
        double en = scaled_norm(err, y, y5, opt.atol, opt.rtol);

        if (en <= 1.0) {
            DenseSeg seg;
            seg.t0 = t;
            seg.h = h;
            seg.r1 = y;
            seg.r2.resize(n);
            seg.r3.resize(n);
            seg.r4.resize(n);
            seg.r5.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                double dy = y5[i] - y[i];
                seg.r2[i] = dy;
                seg.r3[i] = h * k1[i] - dy;
                seg.r4[i] = dy - h * k7[i] - seg.r3[i];
                seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                 d6 * k6[i] + d7 * k7[i]);
            }
            res.segs.push_back(std::move(seg));
            t += h;
            y = y5;
            k1 = k7;  // first-same-as-last
            ++res.n_steps;

            if (event && event(t, y) <= 0.0) {
                double te = locate_event(event, res.segs.back(), t, work);
                res.segs.back().eval(te, y);
                res.t_end = te;
                res.y_end = y;
                res.reason = StopReason::event;
                return res;
            }
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
            h *= fac;
            last_rejected = false;
        } else {
            double fac = std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0);
            h *= fac;
            ++res.n_rejected;
            last_rejected = true;
        }
    }
    res.t_end = t;
    res.y_end = y;
    res.reason = StopReason::reached_end;
    return res;
}

} // namespace chl
