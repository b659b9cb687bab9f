#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zcsim/solver.hpp"
#include "zcsim/square_wave.hpp"
#include "zcsim/switched.hpp"
#include "zcsim/waveform.hpp"

namespace {

constexpr double pi = std::numbers::pi;

zcsim::LampCircuit lamp_lc_fixture(double u) {
    return zcsim::LampCircuit{zcsim::BallastDescriptor::series(0.0, 1.0, 0.05),
                              zcsim::HysteresisLamp(1.0, 0.0, 1.0),
                              zcsim::NamedSinDrive{u}, 2.0 * pi};
}

void BM_ToFourier(benchmark::State& state) {
    const auto w = zcsim::sample_function(1.0, 4096, [](double t) {
        return std::sin(2.0 * pi * t) + 0.3 * std::sin(6.0 * pi * t) +
               0.1 * std::cos(10.0 * pi * t);
    });
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto f = zcsim::to_fourier(w, n_max);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_ToFourier)->Arg(50)->Arg(400);

void BM_Synthesize(benchmark::State& state) {
    const auto f =
        zcsim::sign_series_two_crossing(0.15, 2.0 * pi, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto w = zcsim::synthesize(f, 4096);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_Synthesize)->Arg(99)->Arg(999);

void BM_TwoCrossingSolve(benchmark::State& state) {
    const auto c = lamp_lc_fixture(4.0);
    const int nh = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = zcsim::steady_state_two_crossing(c, 1e-10, nh, 4096);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_TwoCrossingSolve)->Arg(199)->Arg(999)->Unit(benchmark::kMillisecond);

void BM_OracleSettle(benchmark::State& state) {
    const auto c = lamp_lc_fixture(4.0);
    for (auto _ : state) {
        auto s = zcsim::time_domain_oracle(c, {}, 1e-6, 400, 1024);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_OracleSettle)->Unit(benchmark::kMillisecond);

void BM_SwitchedSimulate(benchmark::State& state) {
    zcsim::SwitchedLinearSystem sys;
    sys.dim = 2;
    sys.modes = {zcsim::LinearMode{{0.0, 1.0, -13.0, -0.02}, {0.0, 1.0}},
                 zcsim::LinearMode{{0.0, 1.0, -1.0, -0.02}, {0.0, 1.0}}};
    sys.initial_mode = 0;
    zcsim::LevelRule lr;
    lr.level = 0.1;
    lr.mode_above = 0;
    lr.mode_below = 1;
    sys.rule = lr;
    sys.input = zcsim::HarmonicInput{1.0, 4.0, 0.0, true};
    const std::vector<double> x0{0.2, 0.0};
    for (auto _ : state) {
        auto tr = zcsim::simulate_switched(sys, x0, 50.0, 0.005);
        benchmark::DoNotOptimize(tr);
    }
}
BENCHMARK(BM_SwitchedSimulate)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
