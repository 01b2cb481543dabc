#include <benchmark/benchmark.h>

#include "chl/layer_ode.hpp"
#include "chl/pde.hpp"
#include "chl/potential.hpp"
#include "chl/profile.hpp"
#include "chl/standing_wave.hpp"

namespace {

using namespace chl;

const Potential& quartic() {
    static Potential q = Potential::quartic();
    return q;
}

void BM_StandingWaveSolve(benchmark::State& state) {
    double ell = 0.35, eps = 1.0 / static_cast<double>(state.range(0));
    ell *= eps / 0.05;  // keep ell/eps fixed at 7 across the sweep
    for (auto _ : state) {
        auto w = solve_phi(ell, +1, quartic(), eps);
        benchmark::DoNotOptimize(w.m());
    }
}
BENCHMARK(BM_StandingWaveSolve)->Arg(10)->Arg(20)->Arg(100);

void BM_BuildUh(benchmark::State& state) {
    auto h = LayerVector::checked({0.31, 0.66});
    ProfileParams p{0.07, 0.25, 0.05};
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Field u = build_uh(h, p, quartic(), n);
        benchmark::DoNotOptimize(u.v.data());
    }
}
BENCHMARK(BM_BuildUh)->Arg(256)->Arg(1024)->Arg(4096);

void BM_OdeRhs(benchmark::State& state) {
    std::vector<double> hv;
    int k = static_cast<int>(state.range(0));
    for (int j = 1; j <= k; ++j) hv.push_back(static_cast<double>(j) / (k + 1));
    auto h = LayerVector::checked(hv);
    std::vector<double> eta(static_cast<std::size_t>(k), 1e-4);
    for (auto _ : state) {
        auto p = P_of_h(h, 0.01, quartic());
        auto q = Q_of(h, eta);
        benchmark::DoNotOptimize(p.data());
        benchmark::DoNotOptimize(q.data());
    }
}
BENCHMARK(BM_OdeRhs)->Arg(2)->Arg(6)->Arg(24);

void BM_PdeStep(benchmark::State& state) {
    PdeParams p;
    p.eps = 0.07;
    p.tau = 50.0;
    p.dt = 1e-3;
    p.t_end = 1.0;
    p.n = static_cast<int>(state.range(0));
    auto h0 = LayerVector::checked({0.31, 0.66});
    auto [u0, v0] = initial_data(h0, VelocityMode::forward, p, quartic());
    PdeStepper st(p, quartic());
    st.init(std::move(u0), std::move(v0));
    for (auto _ : state) {
        st.step();
        benchmark::DoNotOptimize(st.state().mass_u);
    }
}
BENCHMARK(BM_PdeStep)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Extract(benchmark::State& state) {
    auto h = LayerVector::checked({0.31, 0.66});
    ProfileParams p{0.07, 0.25, 0.05};
    Field u = build_uh(h, p, quartic(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto c = extract_layers(u);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_Extract)->Arg(1024)->Arg(8192);

} // namespace
