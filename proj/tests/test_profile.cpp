#include <cmath>
#include <vector>

#include <doctest.h>

#include "chl/errors.hpp"
#include "chl/field.hpp"
#include "chl/potential.hpp"
#include "chl/profile.hpp"

using namespace chl;

namespace {
const double kMassRef = -3.033266442419922e-01;  // frozen 50-digit quadrature of the reference profile
}

TEST_CASE("gap interaction scales: exact quadrature values and their closed-form deviations") {
    auto q = Potential::quartic();
    struct Row {
        double r, alpha, beta, dev_a, dev_b;
    };
    // dev_* = |exact/asymptotic - 1|, frozen from the high-precision oracle
    const Row rows[] = {
        {0.10, 1.154274649265e-05, 3.403252837003e-03, 9.357830e-05, 1.751395e-03},
        {0.08, 3.363622311604e-07, 5.801357184675e-04, 3.618678e-06, 2.919619e-04},
        {0.05, 8.325629019216e-12, 2.885420773868e-06, 1.695575e-10, 1.442801e-06},
    };
    double prev_dev = 1.0;
    for (const auto& row : rows) {
        auto ex = alpha_beta(row.r, +1, AlphaMode::exact, q);
        CHECK(ex.alpha == doctest::Approx(row.alpha).epsilon(1e-9));
        CHECK(ex.beta == doctest::Approx(row.beta).epsilon(1e-9));
        auto as = alpha_beta(row.r, +1, AlphaMode::asymptotic, q);
        CHECK(as.alpha == doctest::Approx(16.0 * std::exp(-std::sqrt(2.0) / row.r)).epsilon(1e-13));
        double dev_a = std::fabs(ex.alpha / as.alpha - 1.0);
        double dev_b = std::fabs(ex.beta / as.beta - 1.0);
        CHECK(dev_a == doctest::Approx(row.dev_a).epsilon(1e-4));
        CHECK(dev_b == doctest::Approx(row.dev_b).epsilon(1e-4));
        CHECK(dev_a < prev_dev);  // deviation shrinks as the gap/eps ratio grows
        prev_dev = dev_a;
        // symmetric potential: both branches identical
        auto exm = alpha_beta(row.r, -1, AlphaMode::exact, q);
        CHECK(exm.alpha == doctest::Approx(ex.alpha).epsilon(1e-12));
    }
    CHECK_THROWS_AS(alpha_beta(0.3, +1, AlphaMode::asymptotic, q), DomainError);
    CHECK_THROWS_AS(alpha_beta(0.3, +1, AlphaMode::exact, q), NoSolution);
}

TEST_CASE("layer vectors validate ordering and expose padded geometry") {
    CHECK_THROWS_AS(LayerVector::checked({}), ValidationFailure);
    CHECK_THROWS_AS(LayerVector::checked({0.0, 0.5}), ValidationFailure);
    CHECK_THROWS_AS(LayerVector::checked({0.4, 0.4}), ValidationFailure);
    CHECK_THROWS_AS(LayerVector::checked({0.6, 0.4}), ValidationFailure);
    CHECK_THROWS_AS(LayerVector::checked({0.4, 1.0}), ValidationFailure);

    auto h = LayerVector::checked({0.31, 0.66});
    CHECK(h.transitions() == 2);
    CHECK(h[0] == 0.31);
    CHECK(h[1] == 0.66);
    auto pad = h.padded();
    REQUIRE(pad.size() == 4);
    CHECK(pad[0] == doctest::Approx(-0.31).epsilon(1e-15));
    CHECK(pad[3] == doctest::Approx(1.34).epsilon(1e-15));
    auto gl = h.gap_lengths();
    REQUIRE(gl.size() == 3);
    CHECK(gl[0] == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(gl[1] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(gl[2] == doctest::Approx(0.68).epsilon(1e-15));
    CHECK(h.min_gap() == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(h.in_omega(0.07, 0.25));       // floor 0.28 < 0.35
    CHECK_FALSE(h.in_omega(0.08, 0.2));  // floor 0.40 exceeds the middle gap
}

TEST_CASE("scale parameter triangle is enforced") {
    ProfileParams p{0.07, 0.25, 0.05};
    CHECK_NOTHROW(p.validate(2));
    CHECK_THROWS_AS((ProfileParams{0.07, 0.25, 0.0}.validate(2)), ValidationFailure);
    CHECK_THROWS_AS((ProfileParams{0.07, 0.25, 0.3}.validate(2)), ValidationFailure);   // delta >= eps/rho
    CHECK_THROWS_AS((ProfileParams{0.07, 0.25, 0.05}.validate(4)), ValidationFailure);  // eps/rho >= 1/K
    CHECK_THROWS_AS((ProfileParams{0.0, 0.25, 0.05}.validate(2)), ValidationFailure);
}

TEST_CASE("two-transition profile matches the frozen pointwise oracle") {
    auto q = Potential::quartic();
    auto h = LayerVector::checked({0.31, 0.66});
    ProfileBuilder b(h, q, 0.07);
    CHECK(b.value(0.000) == doctest::Approx(-9.923466899036104e-01).epsilon(1e-10));
    CHECK(b.value(0.155) == doctest::Approx(-9.161279287369575e-01).epsilon(1e-10));
    CHECK(std::fabs(b.value(0.31)) <= 1e-12);
    CHECK(b.value(0.350) == doctest::Approx(+3.724231267054924e-01).epsilon(1e-10));
    CHECK(b.value(0.485) == doctest::Approx(+8.729836980951353e-01).epsilon(1e-10));
    CHECK(std::fabs(b.value(0.66)) <= 1e-12);
    CHECK(b.value(0.830) == doctest::Approx(-9.374503523960501e-01).epsilon(1e-10));
    CHECK(b.value(1.000) == doctest::Approx(-9.958331289289348e-01).epsilon(1e-10));

    ProfileParams p{0.07, 0.25, 0.05};
    CHECK(mass(h, p, q) == doctest::Approx(kMassRef).epsilon(1e-10));

    // sampled field agrees with the pointwise builder
    auto u = build_uh(h, p, q, 512);
    CHECK(u.n == 512);
    CHECK(u.v.front() == doctest::Approx(b.value(0.0)).epsilon(1e-13));
    CHECK(u.v[128] == doctest::Approx(b.value(0.25)).epsilon(1e-13));
    CHECK(u.v.back() == doctest::Approx(b.value(1.0)).epsilon(1e-13));
}

TEST_CASE("profile construction rejects inadmissible or under-resolved input") {
    auto q = Potential::quartic();
    ProfileParams p{0.07, 0.25, 0.05};
    // middle gap 0.2 below the floor eps/rho = 0.28
    CHECK_THROWS_AS(build_uh(LayerVector::checked({0.4, 0.6}), p, q, 512), DomainError);
    // grid too coarse for eps
    CHECK_THROWS_AS(build_uh(LayerVector::checked({0.31, 0.66}), p, q, 64), ValidationFailure);
}

TEST_CASE("stationarity defect is small and decreases with separation") {
    auto q = Potential::quartic();
    ProfileParams p{0.05, 0.25, 0.02};
    auto tight = ac_residual(build_uh(LayerVector::checked({0.38, 0.62}), p, q, 4096), q, 0.05);
    auto wide = ac_residual(build_uh(LayerVector::checked({0.25, 0.75}), p, q, 4096), q, 0.05);
    CHECK(tight.sup < 0.15);
    CHECK(wide.sup < tight.sup);
    CHECK(wide.l2 <= wide.sup);
    CHECK(tight.r.n == 4096);
}

TEST_CASE("mass responds to transition shifts with slope +-2") {
    auto q = Potential::quartic();
    ProfileParams p{0.01, 0.2, 0.005};
    auto base = std::vector<double>{0.25, 0.5, 0.75};
    double d = 1e-5;
    for (int j = 0; j < 3; ++j) {
        auto up = base, dn = base;
        up[static_cast<std::size_t>(j)] += d;
        dn[static_cast<std::size_t>(j)] -= d;
        double fd = (mass(LayerVector::unchecked(up), p, q) -
                     mass(LayerVector::unchecked(dn), p, q)) /
                    (2 * d);
        double expect = (j % 2 == 0) ? -2.0 : 2.0;  // odd transitions (1-based) push mass down
        CHECK(fd == doctest::Approx(expect).epsilon(1e-5));
    }
}

TEST_CASE("last transition is recoverable from the mass target") {
    auto q = Potential::quartic();
    ProfileParams p{0.07, 0.25, 0.05};
    double recovered = solve_hN1({0.31}, kMassRef, p, q);
    CHECK(recovered == doctest::Approx(0.66).epsilon(1e-9));
    // the last slot carries mass slope +2, so the root tracks target/2
    double shifted = solve_hN1({0.31}, kMassRef + 0.01, p, q);
    CHECK(shifted == doctest::Approx(0.665).epsilon(1e-3));
    CHECK_THROWS_AS(solve_hN1({}, 0.0, p, q), ValidationFailure);
    CHECK_THROWS_AS(solve_hN1({0.5, 0.4}, 0.0, p, q), ValidationFailure);
    // no room left after the fixed transitions
    CHECK_THROWS_AS(solve_hN1({0.31, 0.9}, kMassRef, p, q), NoRoot);
}

TEST_CASE("gap-imbalance barrier vanishes only for equal gaps") {
    auto q = Potential::quartic();
    ProfileParams p{0.04, 0.2, 0.01};
    double balanced = barrier_psi(LayerVector::checked({0.25, 0.75}), p, q);
    double tilted = barrier_psi(LayerVector::checked({0.3, 0.75}), p, q);
    CHECK(balanced <= 1e-30);
    CHECK(tilted > 1e-12);
    ProfileParams wider{0.04, 0.13, 0.01};
    double spread = barrier_psi(LayerVector::checked({0.32, 0.72}), p, q);
    double tighter = barrier_psi(LayerVector::checked({0.36, 0.68}), wider, q);
    CHECK(spread < tighter);  // imbalance grows as the middle gap closes
}
