#include <cmath>
#include <vector>

#include <doctest.h>

#include "chl/errors.hpp"
#include "chl/rk45.hpp"

using namespace chl;

TEST_CASE("scalar decay hits the closed-form solution") {
    OdeRhs f = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = -y[0];
    };
    OdeOptions opt;
    auto res = integrate_ode(f, {1.0}, 0.0, 3.0, opt);
    REQUIRE(res.reason == StopReason::reached_end);
    CHECK(res.t_end == 3.0);
    CHECK(res.y_end[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
    CHECK(res.n_steps > 5);
    CHECK(!res.segs.empty());

    // dense output stays on the exact solution between step endpoints
    std::vector<double> y(1);
    for (double t : {0.13, 0.77, 1.451, 2.333, 2.999}) {
        res.sample(t, y);
        CHECK(y[0] == doctest::Approx(std::exp(-t)).epsilon(1e-8));
    }
}

TEST_CASE("harmonic oscillator conserves energy to tolerance over many periods") {
    OdeRhs f = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    OdeOptions opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-13;
    auto res = integrate_ode(f, {1.0, 0.0}, 0.0, 20.0, opt);
    CHECK(res.y_end[0] == doctest::Approx(std::cos(20.0)).epsilon(1e-8));
    CHECK(res.y_end[1] == doctest::Approx(-std::sin(20.0)).epsilon(1e-8));
    double e = res.y_end[0] * res.y_end[0] + res.y_end[1] * res.y_end[1];
    CHECK(e == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("events stop the trajectory at the located crossing") {
    OdeRhs f = [](double, const std::vector<double>&, std::vector<double>& dy) {
        dy[0] = -1.0;
    };
    OdeEvent ev = [](double, const std::vector<double>& y) { return y[0]; };
    OdeOptions opt;
    auto res = integrate_ode(f, {1.0}, 0.0, 10.0, opt, ev);
    CHECK(res.reason == StopReason::event);
    CHECK(res.t_end == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(res.y_end[0]) <= 1e-9);

    // nonlinear crossing: y = cos t hits zero at pi/2
    OdeRhs g = [](double t, const std::vector<double>&, std::vector<double>& dy) {
        dy[0] = -std::sin(t);
    };
    auto res2 = integrate_ode(g, {1.0}, 0.0, 10.0, opt, ev);
    CHECK(res2.reason == StopReason::event);
    CHECK(res2.t_end == doctest::Approx(std::acos(-1.0) / 2).epsilon(1e-9));

    CHECK_THROWS_AS(integrate_ode(f, {0.0}, 0.0, 10.0, opt, ev), EventAtStart);
    CHECK_THROWS_AS(integrate_ode(f, {-0.5}, 0.0, 10.0, opt, ev), EventAtStart);
}

TEST_CASE("degenerate spans and bad inputs are rejected cleanly") {
    OdeRhs f = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[0];
    };
    OdeOptions opt;
    auto res = integrate_ode(f, {2.5}, 1.0, 1.0, opt);
    CHECK(res.t_end == 1.0);
    CHECK(res.y_end[0] == 2.5);

    CHECK_THROWS_AS(integrate_ode(f, {}, 0.0, 1.0, opt), ValidationFailure);
    CHECK_THROWS_AS(integrate_ode(f, {1.0}, 1.0, 0.0, opt), ValidationFailure);
    OdeOptions tiny = opt;
    tiny.max_steps = 3;
    CHECK_THROWS_AS(integrate_ode(f, {1.0}, 0.0, 50.0, tiny), StepFailure);
}

TEST_CASE("stiff fallback integrates a fast-relaxation problem at modest cost") {
    // y' = -1000 (y - cos t): explicit pairs need h ~ 1/1000, the L-stable
    // two-stage scheme walks through with the configured step
    OdeRhs f = [](double t, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = -1000.0 * (y[0] - std::cos(t));
    };
    OdeOptions opt;
    opt.stiff = true;
    opt.stiff_dt = 1e-3;
    auto res = integrate_ode(f, {0.0}, 0.0, 1.0, opt);
    CHECK(res.y_end[0] == doctest::Approx(std::cos(1.0)).epsilon(5e-3));
    CHECK(res.n_steps <= 1001);

    std::vector<double> y(1);
    res.sample(0.5, y);
    CHECK(y[0] == doctest::Approx(std::cos(0.5)).epsilon(5e-3));

    // events fire in the stiff path too
    OdeEvent ev = [](double, const std::vector<double>& y) { return 0.8 - y[0]; };
    auto rese = integrate_ode(f, {0.0}, 0.0, 1.0, opt, ev);
    CHECK(rese.reason == StopReason::event);
    CHECK(rese.y_end[0] == doctest::Approx(0.8).epsilon(1e-2));
}

TEST_CASE("dense segments cover the whole span contiguously") {
    OdeRhs f = [](double t, const std::vector<double>&, std::vector<double>& dy) {
        dy[0] = std::cos(t);
    };
    OdeOptions opt;
    auto res = integrate_ode(f, {0.0}, 0.0, 6.0, opt);
    double prev = 0.0;
    for (const auto& s : res.segs) {
        CHECK(s.t0 == doctest::Approx(prev).epsilon(1e-12));
        CHECK(s.h > 0.0);
        prev = s.t0 + s.h;
    }
    CHECK(prev == doctest::Approx(6.0).epsilon(1e-12));
    std::vector<double> y(1);
    for (double t = 0.0; t <= 6.0; t += 0.37) {
        res.sample(t, y);
        CHECK(y[0] == doctest::Approx(std::sin(t)).epsilon(1e-9));
    }
}
