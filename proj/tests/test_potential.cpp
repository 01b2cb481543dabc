#include <cmath>

#include <doctest.h>

#include "chl/errors.hpp"
#include "chl/potential.hpp"

using namespace chl;

TEST_CASE("quartic well constants are the closed-form values") {
    auto q = Potential::quartic();
    auto w = q.wells();
    CHECK(w.a_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(w.a_minus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // tail prefactors come from the quadrature; exact value is 4
    CHECK(w.k_plus == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(w.k_minus == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(q.even());
}

TEST_CASE("quartic derivatives are consistent") {
    auto q = Potential::quartic();
    CHECK(q.F(1.0) == 0.0);
    CHECK(q.F(-1.0) == 0.0);
    CHECK(q.F1(1.0) == 0.0);
    CHECK(q.F1(-1.0) == 0.0);
    CHECK(q.F2(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(q.F2(-1.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (double u : {-1.2, -0.7, -0.2, 0.0, 0.4, 0.9, 1.1}) {
        double d = 1e-6;
        double fd1 = (q.F(u + d) - q.F(u - d)) / (2 * d);
        CHECK(q.F1(u) == doctest::Approx(fd1).epsilon(1e-7));
        double fd2 = (q.F1(u + d) - q.F1(u - d)) / (2 * d);
        CHECK(q.F2(u) == doctest::Approx(fd2).epsilon(1e-7));
        double fd3 = (q.F2(u + d) - q.F2(u - d)) / (2 * d);
        CHECK(q.F3(u) == doctest::Approx(fd3).epsilon(1e-6));
    }
    CHECK(q.f2_sup() >= 2.0);
    CHECK(q.a_min() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("polynomial coefficients reproducing the quartic give the same constants") {
    auto p = Potential::polynomial({0.25, 0.0, -0.5, 0.0, 0.25});
    auto q = Potential::quartic();
    CHECK(p.even());
    auto wp = p.wells();
    CHECK(wp.a_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(wp.k_plus == doctest::Approx(4.0).epsilon(1e-6));
    for (double u : {-1.1, -0.3, 0.5, 1.05})
        CHECK(p.F(u) == doctest::Approx(q.F(u)).epsilon(1e-13));
}

TEST_CASE("asymmetric sextic well validates and exposes distinct branches") {
    // F(u) = (u-1)^2 (u+1)^2 (u^2 + 2u + 4)/16: equal-depth wells, uneven curvature
    auto s = Potential::polynomial({0.25, 0.125, -0.4375, -0.25, 0.125, 0.125, 0.0625});
    CHECK_FALSE(s.even());
    CHECK(s.F(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s.F(-1.0) == doctest::Approx(0.0).epsilon(1e-14));
    auto w = s.wells();
    CHECK(w.a_plus == doctest::Approx(std::sqrt(3.5)).epsilon(1e-10));
    CHECK(w.a_minus == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
    CHECK(w.k_plus > 0.0);
    CHECK(w.k_minus > 0.0);
    CHECK(s.a_min() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
}

TEST_CASE("ill-posed wells are rejected") {
    // nonzero value at u = 1
    CHECK_THROWS_AS(Potential::polynomial({0.3, 0.0, -0.5, 0.0, 0.25}), ValidationFailure);
    // negative dip between the wells: F = (u^2-1)^2 (u^2 - 1/2) / 4
    CHECK_THROWS_AS(Potential::polynomial({-0.125, 0.0, 0.5, 0.0, -0.625, 0.0, 0.25}),
                    ValidationFailure);
    // interior double zero at u = 0: F = u^4 (u^2-1)^2 / 4
    CHECK_THROWS_AS(Potential::polynomial({0.0, 0.0, 0.0, 0.0, 0.25, 0.0, -0.5, 0.0, 0.25}),
                    ValidationFailure);
    // degenerate curvature: F = (u^2-1)^4 / 8 has F''(1) = 0
    CHECK_THROWS_AS(Potential::polynomial({0.125, 0.0, -0.5, 0.0, 0.75, 0.0, -0.5, 0.0, 0.125}),
                    ValidationFailure);
}
