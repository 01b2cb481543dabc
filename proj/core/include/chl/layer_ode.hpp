#pragma once

#include <utility>
#include <vector>

#include "chl/potential.hpp"
#include "chl/profile.hpp"
#include "chl/rk45.hpp"

namespace chl {

enum class OdeSystem { classic, hyperbolic };
enum class VelocityMode { zero, forward, reversed };

struct OdeParams {
    double eps = 0.0;
    double rho = 0.0;
    double tau = 0.0;  // hyperbolic only
    double t_end = 0.0;
    AlphaMode alpha_mode = AlphaMode::asymptotic;
    OdeOptions opt;
};

// per-gap interaction coefficients alpha_j, j = 1..K+1 (odd gaps on the -1 phase)
std::vector<double> alpha_gaps(const LayerVector& h, double eps, const Potential& pot,
                               AlphaMode mode);

// transition velocities of the first-order flow: stacked pair sums of
// P_i = (alpha_{i+2} - alpha_i) / (4 l_{i+1})
std::vector<double> P_of_h(const LayerVector& h, double eps, const Potential& pot,
                           AlphaMode mode = AlphaMode::asymptotic);

// inertial transport terms q_i = (eta_{i+1}^2 - eta_i^2) / (2 l_{i+1}), same stacking
std::vector<double> Q_of(const LayerVector& h, const std::vector<double>& eta);

// eta0 for the hyperbolic system: +-P(h0) or zero
std::vector<double> initial_velocities(const LayerVector& h0, VelocityMode mode,
                                       double eps, const Potential& pot,
                                       AlphaMode amode = AlphaMode::asymptotic);

struct Trajectory {
    OdeSystem system = OdeSystem::classic;
    int K = 0;
    OdeResult result;

    double t_end() const { return result.t_end; }
    bool hit_event() const { return result.reason == StopReason::event; }
    std::vector<double> h_at(double t) const;    // K transitions
    std::vector<double> eta_at(double t) const;  // velocities (classic: P(h(t)))

    double eps = 0.0;
    const Potential* pot = nullptr;
    AlphaMode amode = AlphaMode::asymptotic;
};

// integrate the reduced flow until t_end or domain exit (min gap reaches eps/rho)
Trajectory integrate_layers(const LayerVector& h0, const std::vector<double>& eta0,
                            OdeSystem sys, const OdeParams& p, const Potential& pot);

// phase lengths: first component total length where u is near -1, second near +1
std::pair<double, double> phase_lengths(const std::vector<double>& h);
// their time derivatives given transition velocities
std::pair<double, double> phase_length_rates(const std::vector<double>& eta);

struct TauCompareRow {
    double tau;
    double sup_h;        // sup_t max_j |h_tau - h_classic|
    double int_eta;      // integral of max_j |eta_tau - eta_classic|
    double sup_eta_late; // sup over t >= t1
};

// relaxation-limit study: hyperbolic runs against the classic flow from the
// same initial layers (forward initial velocities)
std::vector<TauCompareRow> compare_tau_limit(const LayerVector& h0,
                                             const std::vector<double>& taus,
                                             double t_end, double t1,
                                             const OdeParams& p, const Potential& pot);

// least-squares slope of log(metric) against log(tau)
double fit_loglog_slope(const std::vector<double>& taus, const std::vector<double>& vals);

} // namespace chl
