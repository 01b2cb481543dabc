#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "chl/banded.hpp"
#include "chl/errors.hpp"

using namespace chl;

namespace {

// dense mat-vec for a pentadiagonal matrix given by its five diagonals
std::vector<double> mul(int n, const std::vector<double>& sub2, const std::vector<double>& sub1,
                        const std::vector<double>& diag, const std::vector<double>& sup1,
                        const std::vector<double>& sup2, const std::vector<double>& x) {
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        auto iu = static_cast<std::size_t>(i);
        double s = diag[iu] * x[iu];
        if (i >= 1) s += sub1[iu - 1] * x[iu - 1];
        if (i >= 2) s += sub2[iu - 2] * x[iu - 2];
        if (i + 1 < n) s += sup1[iu] * x[iu + 1];
        if (i + 2 < n) s += sup2[iu] * x[iu + 2];
        b[iu] = s;
    }
    return b;
}

} // namespace

TEST_CASE("pentadiagonal solve recovers a planted solution") {
    const int n = 64;
    auto nu = static_cast<std::size_t>(n);
    std::vector<double> sub2(nu - 2), sub1(nu - 1), diag(nu), sup1(nu - 1), sup2(nu - 2), x(nu);
    unsigned long state = 12345;
    auto rnd = [&state]() {  // xorshift, deterministic across platforms
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state % 1000) / 1000.0 - 0.5;
    };
    for (auto& v : sub2) v = rnd();
    for (auto& v : sub1) v = rnd();
    for (auto& v : sup1) v = rnd();
    for (auto& v : sup2) v = rnd();
    for (auto& v : diag) v = 8.0 + rnd();  // diagonally dominant: well conditioned
    for (auto& v : x) v = rnd();

    auto b = mul(n, sub2, sub1, diag, sup1, sup2, x);
    PentaSolver solver(n, sub2, sub1, diag, sup1, sup2);
    solver.solve(b);
    for (std::size_t i = 0; i < nu; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("pivoting handles rows that start with a weak diagonal") {
    // small system engineered so naive elimination without pivoting degrades
    const int n = 5;
    std::vector<double> sub2{0.4, -0.3, 0.9};
    std::vector<double> sub1{2.0, -1.5, 2.5, 1.1};
    std::vector<double> diag{1e-14, 1.0, -2.0, 1.3, 0.7};
    std::vector<double> sup1{3.0, 0.5, -0.8, 2.2};
    std::vector<double> sup2{-1.0, 0.6, 1.4};
    std::vector<double> x{1.0, -2.0, 3.0, -4.0, 5.0};
    auto b = mul(n, sub2, sub1, diag, sup1, sup2, x);
    PentaSolver solver(n, sub2, sub1, diag, sup1, sup2);
    solver.solve(b);
    for (std::size_t i = 0; i < 5; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("singular and ill-shaped systems are rejected") {
    std::vector<double> z3(3, 0.0), z2(2, 0.0);
    CHECK_THROWS_AS(PentaSolver(3, z2, z3, z3, z2, z2), ValidationFailure);  // sub1 too long
    CHECK_THROWS_AS(PentaSolver(2, {}, {0.0}, {1.0, 1.0}, {0.0}, {}), ValidationFailure);  // n < 3
    std::vector<double> sub2{0.0}, sub1{0.0, 0.0}, diag{0.0, 0.0, 0.0}, sup1{0.0, 0.0}, sup2{0.0};
    CHECK_THROWS_AS(PentaSolver(3, sub2, sub1, diag, sup1, sup2), SolveFailure);  // all zero
}
