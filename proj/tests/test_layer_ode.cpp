#include <cmath>
#include <vector>

#include <doctest.h>

#include "chl/errors.hpp"
#include "chl/layer_ode.hpp"
#include "chl/potential.hpp"
#include "chl/profile.hpp"

using namespace chl;

namespace {

double alt_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += (j % 2 == 0 ? 1.0 : -1.0) * v[j];
    return s;
}

} // namespace

TEST_CASE("gap coefficients follow the parity of the phases") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.31, 0.66});
    auto a = alpha_gaps(h, 0.07, q, AlphaMode::asymptotic);
    REQUIRE(a.size() == 3);
    // quartic is symmetric: alpha depends only on the gap length
    CHECK(a[0] == doctest::Approx(16.0 * std::exp(-std::sqrt(2.0) * 0.62 / 0.07)).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(16.0 * std::exp(-std::sqrt(2.0) * 0.35 / 0.07)).epsilon(1e-12));
    CHECK(a[2] == doctest::Approx(16.0 * std::exp(-std::sqrt(2.0) * 0.68 / 0.07)).epsilon(1e-12));
    // resolved coefficients agree with the closed form to the known deviation scale
    auto ex = alpha_gaps(h, 0.07, q, AlphaMode::exact);
    for (int j = 0; j < 3; ++j)
        CHECK(ex[static_cast<std::size_t>(j)] ==
              doctest::Approx(a[static_cast<std::size_t>(j)]).epsilon(5e-2));
}

TEST_CASE("two transitions move rigidly") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.31, 0.66});
    auto p = P_of_h(h, 0.07, q);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == p[1]);  // single interior pair sum appears at both slots
    CHECK(p[0] < 0.0);    // dominant middle gap pulls the pair toward 0

    OdeParams op;
    op.eps = 0.07;
    op.rho = 0.25;
    op.t_end = 200.0;
    auto traj = integrate_layers(h, {}, OdeSystem::classic, op, q);
    CHECK_FALSE(traj.hit_event());
    auto h200 = traj.h_at(200.0);
    CHECK(h200[1] - h200[0] == doctest::Approx(0.35).epsilon(1e-11));
    CHECK(h200[0] < 0.31);  // drifts left, toward the nearer wall
}

TEST_CASE("pair-sum stacking telescopes exactly") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.12, 0.35, 0.52, 0.71, 0.9});
    auto p = P_of_h(h, 0.04, q);
    REQUIRE(p.size() == 5);
    // each interior sum enters twice with opposite signs; only the rounding of
    // the per-slot pair additions survives
    CHECK(std::fabs(alt_sum(p)) <= 1e-16);

    std::vector<double> eta{0.3, -0.1, 0.07, 0.2, -0.25};
    auto qq = Q_of(h, eta);
    REQUIRE(qq.size() == 5);
    CHECK(std::fabs(alt_sum(qq)) <= 1e-16);
    // endpoint slots hold a single pair sum: q_1 = (eta_2^2 - eta_1^2)/(2 l_2)
    double l2 = h[1] - h[0];
    CHECK(qq[0] == doctest::Approx((eta[1] * eta[1] - eta[0] * eta[0]) / (2 * l2)).epsilon(1e-14));
}

TEST_CASE("phase lengths are conserved along the first-order flow") {
    auto q = Potential::quartic();
    auto h0 = LayerVector::checked({0.2, 0.45, 0.75});
    OdeParams op;
    op.eps = 0.045;
    op.rho = 0.2;
    op.t_end = 50.0;
    op.opt.rtol = 1e-11;
    op.opt.atol = 1e-13;
    auto traj = integrate_layers(h0, {}, OdeSystem::classic, op, q);
    auto [lm0, lp0] = phase_lengths(h0.raw());
    CHECK(lm0 + lp0 == doctest::Approx(1.0).epsilon(1e-15));
    for (double t : {5.0, 20.0, 50.0}) {
        auto [lm, lp] = phase_lengths(traj.h_at(t));
        CHECK(std::fabs(lm - lm0) <= 1e-10);
        CHECK(std::fabs(lp - lp0) <= 1e-10);
    }
    // rates are alternating sums of the velocities: identically zero here
    auto rates = phase_length_rates(P_of_h(LayerVector::unchecked(traj.h_at(20.0)), op.eps, q));
    CHECK(std::fabs(rates.first) <= 1e-18);
    CHECK(std::fabs(rates.second) <= 1e-18);
}

TEST_CASE("inertial flow relaxes phase lengths exponentially in tau") {
    auto q = Potential::quartic();
    auto h0 = LayerVector::checked({0.2, 0.45, 0.75});
    double tau = 2.0;
    OdeParams op;
    op.eps = 0.045;
    // keep the admissible floor eps/rho = 0.18 clear of the shrinking 0.25 gap,
    // which would otherwise stop the run near t = 3.8
    op.rho = 0.25;
    op.tau = tau;
    op.t_end = 5.0;
    op.opt.rtol = 1e-12;
    op.opt.atol = 1e-14;
    // seed one transition with extra speed: the alternating velocity sum y
    // decays as y0 exp(-t/tau), so each phase length moves by tau (1-e^{-t/tau}) y0
    std::vector<double> eta0 = initial_velocities(h0, VelocityMode::forward, op.eps, q);
    eta0[0] += 1e-3;
    double y0 = 1e-3;  // slot 1 enters d(L_-)/dt with positive sign
    auto traj = integrate_layers(h0, eta0, OdeSystem::hyperbolic, op, q);
    auto [lm0, lp0] = phase_lengths(h0.raw());
    for (double t : {1.0, 3.0, 5.0}) {
        auto [lm, lp] = phase_lengths(traj.h_at(t));
        double predicted = lm0 + tau * (1.0 - std::exp(-t / tau)) * y0;
        CHECK(lm == doctest::Approx(predicted).epsilon(1e-8));
        CHECK(lm + lp == doctest::Approx(1.0).epsilon(1e-12));
    }

    // manifold seeding keeps the alternating sum at zero: lengths stay put
    auto flat = integrate_layers(h0, initial_velocities(h0, VelocityMode::forward, op.eps, q),
                                 OdeSystem::hyperbolic, op, q);
    auto [lmf, lpf] = phase_lengths(flat.h_at(5.0));
    CHECK(std::fabs(lmf - lm0) <= 1e-10);
    CHECK(std::fabs(lpf - lp0) <= 1e-10);
}

TEST_CASE("trajectories stop when a gap reaches the admissible floor") {
    auto q = Potential::quartic();
    // tight first gap keeps shrinking: 2 h_1 heads to the floor eps/rho
    auto h0 = LayerVector::checked({0.12, 0.5});
    OdeParams op;
    op.eps = 0.04;
    op.rho = 0.2;
    op.t_end = 1e9;
    auto traj = integrate_layers(h0, {}, OdeSystem::classic, op, q);
    CHECK(traj.hit_event());
    auto hf = traj.h_at(traj.t_end());
    CHECK(LayerVector::unchecked(hf).min_gap() == doctest::Approx(0.2).epsilon(1e-8));

    // already below the floor: refuse to start
    CHECK_THROWS_AS(integrate_layers(LayerVector::checked({0.09, 0.5}), {},
                                     OdeSystem::classic, op, q),
                    EventAtStart);
}

TEST_CASE("velocity seeding modes") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.31, 0.66});
    auto zero = initial_velocities(h, VelocityMode::zero, 0.07, q);
    auto fwd = initial_velocities(h, VelocityMode::forward, 0.07, q);
    auto rev = initial_velocities(h, VelocityMode::reversed, 0.07, q);
    auto p = P_of_h(h, 0.07, q);
    REQUIRE(zero.size() == 2);
    for (int j = 0; j < 2; ++j) {
        auto ju = static_cast<std::size_t>(j);
        CHECK(zero[ju] == 0.0);
        CHECK(fwd[ju] == p[ju]);
        CHECK(rev[ju] == -p[ju]);
    }
}

TEST_CASE("inertial runs approach the first-order flow as tau shrinks") {
    auto q = Potential::quartic();
    auto h0 = LayerVector::checked({0.22, 0.55, 0.83});
    OdeParams op;
    op.eps = 0.04;
    op.rho = 0.2;
    op.t_end = 10.0;
    op.opt.rtol = 1e-11;
    op.opt.atol = 1e-13;
    auto rows = compare_tau_limit(h0, {1e-1, 1e-2}, 10.0, 1.0, op, q);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].tau == 0.1);
    CHECK(rows[0].sup_h > rows[1].sup_h);
    CHECK(rows[0].int_eta > rows[1].int_eta);
    CHECK(rows[0].sup_eta_late > rows[1].sup_eta_late);
    for (const auto& r : rows) {
        CHECK(r.sup_h > 0.0);
        CHECK(r.sup_h < 1e-3);
    }
    double slope = fit_loglog_slope({1e-1, 1e-2}, {rows[0].sup_h, rows[1].sup_h});
    CHECK(slope > 0.5);
    CHECK(slope < 1.5);
}

TEST_CASE("hyperbolic integration requires consistent inertia inputs") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.31, 0.66});
    OdeParams op;
    op.eps = 0.07;
    op.rho = 0.25;
    op.t_end = 1.0;
    CHECK_THROWS_AS(integrate_layers(h, {0.0, 0.0}, OdeSystem::hyperbolic, op, q),
                    ValidationFailure);  // tau missing
    op.tau = 1.0;
    CHECK_THROWS_AS(integrate_layers(h, {0.0}, OdeSystem::hyperbolic, op, q),
                    ValidationFailure);  // eta size mismatch
}
