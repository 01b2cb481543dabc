#include "chl/layer_ode.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chl/errors.hpp"
#include "chl/io.hpp"
#include "chl/standing_wave.hpp"

namespace chl {

namespace {

// monotone-in-spacing interpolation table of log(alpha) against t = 1/r for one
// well branch; lets the exact-coefficient flow avoid a root-solve per gap per
// right-hand-side evaluation
class AlphaTable {
public:
    AlphaTable(int sign, const Potential& pot) {
        const int nb = 440;
        const double lb_lo = std::log(1e-13), lb_hi = std::log(0.35);
        std::vector<std::pair<double, double>> pts;  // (t, log alpha)
        pts.reserve(nb + 1);
        for (int k = 0; k <= nb; ++k) {
            double b = std::exp(lb_lo + (lb_hi - lb_lo) * k / nb);
            double mu = sign * (1.0 - b);
            StandingWave::Half h;
            h.build(mu, pot, 1.0);
            pts.emplace_back(2.0 * h.half_len, std::log(pot.F(mu)));
        }
        std::sort(pts.begin(), pts.end());
        t_.resize(pts.size());
        la_.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            t_[i] = pts[i].first;
            la_[i] = pts[i].second;
        }
        slope_.resize(t_.size());
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == 0)
                slope_[i] = (la_[1] - la_[0]) / (t_[1] - t_[0]);
            else if (i + 1 == t_.size())
                slope_[i] = (la_[i] - la_[i - 1]) / (t_[i] - t_[i - 1]);
            else
                slope_[i] = (la_[i + 1] - la_[i - 1]) / (t_[i + 1] - t_[i - 1]);
        }
    }

    double alpha(double r) const {
        double t = 1.0 / r;
        if (t < 4.0)
            throw NoSolution(strf("alpha table: spacing ratio 1/r = %g below the existence margin 4", t));
        if (t < t_.front() || t > t_.back())
            throw DomainError(strf("alpha table: 1/r = %g outside the tabulated range [%g, %g]",
                                   t, t_.front(), t_.back()));
        std::size_t k = static_cast<std::size_t>(
            std::upper_bound(t_.begin(), t_.end(), t) - t_.begin());
        if (k == 0) ++k;
        if (k == t_.size()) --k;
        --k;
        double w = t_[k + 1] - t_[k];
        double th = (t - t_[k]) / w;
        double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
        double h10 = th * (1.0 - th) * (1.0 - th);
        double h01 = th * th * (3.0 - 2.0 * th);
        double h11 = th * th * (th - 1.0);
        return std::exp(h00 * la_[k] + h10 * w * slope_[k] + h01 * la_[k + 1] +
                        h11 * w * slope_[k + 1]);
    }

private:
    std::vector<double> t_, la_, slope_;
};

struct AlphaEval {
    double eps;
    const Potential* pot;
    AlphaMode mode;
    std::shared_ptr<AlphaTable> plus, minus;  // only for exact mode

    double operator()(double len, int sign) const {
        double r = eps / len;
        if (mode == AlphaMode::asymptotic) {
            auto wc = pot->wells();
            double a = sign > 0 ? wc.a_plus : wc.a_minus;
            double k = sign > 0 ? wc.k_plus : wc.k_minus;
            return 0.5 * k * k * a * a * std::exp(-a / r);
        }
        return (sign > 0 ? plus : minus)->alpha(r);
    }
};

AlphaEval make_alpha_eval(double eps, const Potential& pot, AlphaMode mode) {
    AlphaEval ev{eps, &pot, mode, nullptr, nullptr};
    if (mode == AlphaMode::exact) {
        ev.minus = std::make_shared<AlphaTable>(-1, pot);
        // for an even well the two branches coincide; alias instead of rebuilding
        ev.plus = pot.even() ? ev.minus : std::make_shared<AlphaTable>(+1, pot);
    }
    return ev;
}

std::vector<double> alpha_gaps_with(const LayerVector& h, const AlphaEval& ev) {
    auto l = h.gap_lengths();
    std::vector<double> a(l.size());
    for (std::size_t g = 0; g < l.size(); ++g) {
        int sign = (g % 2 == 0) ? -1 : +1;  // first gap lies in the lower phase
        a[g] = ev(l[g], sign);
    }
    return a;
}

// stacked pair sums: out_1 = P_1, out_j = P_{j-1} + P_j, out_K = P_N
std::vector<double> stack_pairs(const std::vector<double>& p, int K) {
    std::vector<double> out(static_cast<std::size_t>(K), 0.0);
    if (p.empty()) return out;
    out.front() = p.front();
    for (int j = 1; j + 1 < K; ++j)
        out[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j) - 1] + p[static_cast<std::size_t>(j)];
    out.back() = p.back();
    return out;
}

std::vector<double> P_with(const LayerVector& h, const AlphaEval& ev) {
    int K = h.transitions();
    auto a = alpha_gaps_with(h, ev);
    auto l = h.gap_lengths();
    std::vector<double> p(static_cast<std::size_t>(K) - 1);
    for (int i = 0; i + 1 < K; ++i)
        p[static_cast<std::size_t>(i)] =
            (a[static_cast<std::size_t>(i) + 2] - a[static_cast<std::size_t>(i)]) /
            (4.0 * l[static_cast<std::size_t>(i) + 1]);
    return stack_pairs(p, K);
}

} // namespace

std::vector<double> alpha_gaps(const LayerVector& h, double eps, const Potential& pot,
                               AlphaMode mode) {
    if (mode == AlphaMode::exact) {
        // one-off path: resolve each gap directly
        auto l = h.gap_lengths();
        std::vector<double> a(l.size());
        for (std::size_t g = 0; g < l.size(); ++g) {
            int sign = (g % 2 == 0) ? -1 : +1;
            a[g] = solve_phi(l[g], sign, pot, eps).alpha();
        }
        return a;
    }
    return alpha_gaps_with(h, make_alpha_eval(eps, pot, mode));
}

std::vector<double> P_of_h(const LayerVector& h, double eps, const Potential& pot,
                           AlphaMode mode) {
    if (h.transitions() < 2)
        throw ValidationFailure("P_of_h: the pair-interaction flow needs at least two transitions");
    if (mode == AlphaMode::exact) {
        int K = h.transitions();
        auto a = alpha_gaps(h, eps, pot, mode);
        auto l = h.gap_lengths();
        std::vector<double> p(static_cast<std::size_t>(K) - 1);
        for (int i = 0; i + 1 < K; ++i)
            p[static_cast<std::size_t>(i)] =
                (a[static_cast<std::size_t>(i) + 2] - a[static_cast<std::size_t>(i)]) /
                (4.0 * l[static_cast<std::size_t>(i) + 1]);
        return stack_pairs(p, K);
    }
    return P_with(h, make_alpha_eval(eps, pot, mode));
}

std::vector<double> Q_of(const LayerVector& h, const std::vector<double>& eta) {
    int K = h.transitions();
    if (static_cast<int>(eta.size()) != K)
        throw ValidationFailure("Q_of: velocity length must match the transition count");
    if (K < 2) throw ValidationFailure("Q_of: needs at least two transitions");
    auto l = h.gap_lengths();
    std::vector<double> q(static_cast<std::size_t>(K) - 1);
    for (int i = 0; i + 1 < K; ++i)
        q[static_cast<std::size_t>(i)] =
            (eta[static_cast<std::size_t>(i) + 1] * eta[static_cast<std::size_t>(i) + 1] -
             eta[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(i)]) /
            (2.0 * l[static_cast<std::size_t>(i) + 1]);
    return stack_pairs(q, K);
}

std::vector<double> initial_velocities(const LayerVector& h0, VelocityMode mode, double eps,
                                       const Potential& pot, AlphaMode amode) {
    if (mode == VelocityMode::zero)
        return std::vector<double>(static_cast<std::size_t>(h0.transitions()), 0.0);
    auto p = P_of_h(h0, eps, pot, amode);
    if (mode == VelocityMode::reversed)
        for (double& v : p) v = -v;
    return p;
}

std::vector<double> Trajectory::h_at(double t) const {
    std::vector<double> y;
    result.sample(t, y);
    y.resize(static_cast<std::size_t>(K));
    return y;
}

std::vector<double> Trajectory::eta_at(double t) const {
    std::vector<double> y;
    result.sample(t, y);
    if (system == OdeSystem::hyperbolic)
        return std::vector<double>(y.begin() + K, y.end());
    y.resize(static_cast<std::size_t>(K));
    return P_of_h(LayerVector::unchecked(std::move(y)), eps, *pot, amode);
}

Trajectory integrate_layers(const LayerVector& h0, const std::vector<double>& eta0,
                            OdeSystem sys, const OdeParams& p, const Potential& pot) {
    int K = h0.transitions();
    if (K < 2) throw ValidationFailure("integrate_layers: need at least two transitions");
    if (!(p.eps > 0.0) || !(p.rho > 0.0))
        throw ValidationFailure("integrate_layers: eps and rho must be positive");
    if (sys == OdeSystem::hyperbolic && !(p.tau > 0.0))
        throw ValidationFailure("integrate_layers: the inertial flow needs tau > 0");

    AlphaEval ev = make_alpha_eval(p.eps, pot, p.alpha_mode);
    double floor_gap = p.eps / p.rho;

    OdeRhs rhs;
    std::vector<double> y0;
    if (sys == OdeSystem::classic) {
        y0 = h0.raw();
        rhs = [ev, K](double, const std::vector<double>& y, std::vector<double>& dy) {
            auto h = LayerVector::unchecked(std::vector<double>(y.begin(), y.begin() + K));
            dy = P_with(h, ev);
        };
    } else {
        if (static_cast<int>(eta0.size()) != K)
            throw ValidationFailure("integrate_layers: eta0 length must match the transition count");
        y0 = h0.raw();
        y0.insert(y0.end(), eta0.begin(), eta0.end());
        double tau = p.tau;
        rhs = [ev, K, tau](double, const std::vector<double>& y, std::vector<double>& dy) {
            auto h = LayerVector::unchecked(std::vector<double>(y.begin(), y.begin() + K));
            std::vector<double> eta(y.begin() + K, y.end());
            auto P = P_with(h, ev);
            dy.resize(y.size());
            for (int j = 0; j < K; ++j) dy[static_cast<std::size_t>(j)] = eta[static_cast<std::size_t>(j)];
            if (K >= 3) {
                auto Q = Q_of(h, eta);
                for (int j = 0; j < K; ++j)
                    dy[static_cast<std::size_t>(K + j)] =
                        (P[static_cast<std::size_t>(j)] - eta[static_cast<std::size_t>(j)]) / tau -
                        Q[static_cast<std::size_t>(j)];
            } else {
                for (int j = 0; j < K; ++j)
                    dy[static_cast<std::size_t>(K + j)] =
                        (P[static_cast<std::size_t>(j)] - eta[static_cast<std::size_t>(j)]) / tau;
            }
        };
    }

    // padded gaps: 2 h_1, interior differences, 2 (1 - h_K)
    OdeEvent event = [K, floor_gap](double, const std::vector<double>& y) {
        double mg = 2.0 * y[0];
        for (int j = 1; j < K; ++j)
            mg = std::min(mg, y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j) - 1]);
        mg = std::min(mg, 2.0 * (1.0 - y[static_cast<std::size_t>(K) - 1]));
        return mg - floor_gap;
    };

    Trajectory traj;
    traj.system = sys;
    traj.K = K;
    traj.eps = p.eps;
    traj.pot = &pot;
    traj.amode = p.alpha_mode;
    traj.result = integrate_ode(rhs, std::move(y0), 0.0, p.t_end, p.opt, event);
    return traj;
}

std::pair<double, double> phase_lengths(const std::vector<double>& h) {
    double lm = 0.0, lp = 0.0;
    double prev = 0.0;
    int K = static_cast<int>(h.size());
    for (int s = 0; s <= K; ++s) {
        double end = (s == K) ? 1.0 : h[static_cast<std::size_t>(s)];
        double len = end - prev;
        if (s % 2 == 0) lm += len;  // leading segment sits in the lower phase
        else lp += len;
        prev = end;
    }
    return {lm, lp};
}

std::pair<double, double> phase_length_rates(const std::vector<double>& eta) {
    int K = static_cast<int>(eta.size());
    double lm = 0.0, lp = 0.0;
    for (int s = 0; s <= K; ++s) {
        double right = (s < K) ? eta[static_cast<std::size_t>(s)] : 0.0;
        double left = (s > 0) ? eta[static_cast<std::size_t>(s) - 1] : 0.0;
        if (s % 2 == 0) lm += right - left;
        else lp += right - left;
    }
    return {lm, lp};
}

std::vector<TauCompareRow> compare_tau_limit(const LayerVector& h0,
                                             const std::vector<double>& taus, double t_end,
                                             double t1, const OdeParams& p,
                                             const Potential& pot) {
    if (taus.empty()) throw ValidationFailure("compare_tau_limit: empty tau list");
    OdeParams pc = p;
    pc.t_end = t_end;
    pc.tau = 0.0;
    Trajectory classic = integrate_layers(h0, {}, OdeSystem::classic, pc, pot);
    if (classic.hit_event())
        throw DomainError(strf("compare_tau_limit: the first-order flow exits the admissible "
                               "region at t=%g, before t_end=%g", classic.t_end(), t_end));
    int K = h0.transitions();
    const int M = 2000;
    std::vector<std::vector<double>> hc(M + 1), ec(M + 1);
    for (int i = 0; i <= M; ++i) {
        double t = t_end * i / M;
        hc[static_cast<std::size_t>(i)] = classic.h_at(t);
        ec[static_cast<std::size_t>(i)] = classic.eta_at(t);
    }
    std::vector<double> eta0 = initial_velocities(h0, VelocityMode::forward, p.eps, pot,
                                                  p.alpha_mode);
    std::vector<TauCompareRow> rows;
    for (double tau : taus) {
        OdeParams ph = p;
        ph.t_end = t_end;
        ph.tau = tau;
        Trajectory hyp = integrate_layers(h0, eta0, OdeSystem::hyperbolic, ph, pot);
        if (hyp.hit_event())
            throw DomainError(strf("compare_tau_limit: the inertial flow (tau=%g) exits the "
                                   "admissible region at t=%g", tau, hyp.t_end()));
        TauCompareRow row{tau, 0.0, 0.0, 0.0};
        double prev_diff = 0.0;
        for (int i = 0; i <= M; ++i) {
            double t = t_end * i / M;
            auto h = hyp.h_at(t);
            auto e = hyp.eta_at(t);
            double dh = 0.0, de = 0.0;
            for (int j = 0; j < K; ++j) {
                dh = std::max(dh, std::fabs(h[static_cast<std::size_t>(j)] -
                                            hc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
                de = std::max(de, std::fabs(e[static_cast<std::size_t>(j)] -
                                            ec[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
            }
            row.sup_h = std::max(row.sup_h, dh);
            if (i > 0) row.int_eta += 0.5 * (prev_diff + de) * (t_end / M);
            prev_diff = de;
            if (t >= t1) row.sup_eta_late = std::max(row.sup_eta_late, de);
        }
        rows.push_back(row);
    }
    return rows;
}

double fit_loglog_slope(const std::vector<double>& taus, const std::vector<double>& vals) {
    if (taus.size() != vals.size() || taus.size() < 2)
        throw ValidationFailure("fit_loglog_slope: need matching lists with at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = static_cast<double>(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        double x = std::log(taus[i]), y = std::log(vals[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace chl
