#pragma once

#include <functional>
#include <vector>

namespace chl {

using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dy)>;
// termination event: integration stops at the first zero crossing from positive
using OdeEvent = std::function<double(double t, const std::vector<double>& y)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_max = 0.0;  // 0: no cap
    long max_steps = 2'000'000;
    bool stiff = false;      // fixed-step TR-BDF2 instead of the adaptive pair
    double stiff_dt = 1e-3;  // step for the stiff fallback
};

// one accepted step with interpolation coefficients; eval is 5th-order consistent
struct DenseSeg {
    double t0 = 0.0, h = 0.0;
    std::vector<double> r1, r2, r3, r4, r5;

    void eval(double t, std::vector<double>& out) const;
};

enum class StopReason { reached_end, event };

struct OdeResult {
    std::vector<DenseSeg> segs;   // contiguous cover of [t0, t_stop]
    std::vector<double> y_end;
    double t_end = 0.0;           // where integration actually stopped
    StopReason reason = StopReason::reached_end;
    long n_steps = 0, n_rejected = 0;

    // dense evaluation anywhere in [t0, t_end]
    void sample(double t, std::vector<double>& out) const;
};

// explicit embedded 5(4) pair with dense output and event location by bisection
// on the interpolant; throws StepFailure / EventAtStart
OdeResult integrate_ode(const OdeRhs& f, std::vector<double> y0, double t0, double t1,
                        const OdeOptions& opt, const OdeEvent& event = nullptr);

} // namespace chl
