#include <cmath>

#include <benchmark/benchmark.h>

#include "lsv/black_scholes.hpp"
#include "lsv/hartman_watson.hpp"
#include "lsv/mc_engine.hpp"
#include "lsv/model.hpp"
#include "lsv/rate_solver.hpp"

namespace {

void bm_european_rate(benchmark::State& state) {
    lsv::LsvModel m = lsv::table1_model(-0.7);
    double K = std::exp(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(lsv::european_rate(m, K).rate);
}
BENCHMARK(bm_european_rate);

void bm_vix_rate(benchmark::State& state) {
    lsv::LsvModel m = lsv::table1_model(-0.7);
    double K = lsv::vix_spot(m) * std::exp(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(lsv::vix_rate(m, K).rate);
}
BENCHMARK(bm_vix_rate);

void bm_simulate_paths(benchmark::State& state) {
    lsv::LsvModel m = lsv::table1_model(-0.7);
    lsv::McConfig c;
    c.n_paths = static_cast<std::size_t>(state.range(0));
    c.n_steps = 200;
    c.maturity = 1.0 / 12.0;
    for (auto _ : state) benchmark::DoNotOptimize(lsv::simulate_paths(m, c).terminal_s.data());
    state.SetItemsProcessed(state.iterations() * state.range(0) * c.n_steps);
}
BENCHMARK(bm_simulate_paths)->Arg(10000)->Unit(benchmark::kMillisecond);

void bm_implied_vol(benchmark::State& state) {
    double p = lsv::black_price(1.0, 1.1, 0.3, 0.25, true);
    for (auto _ : state) benchmark::DoNotOptimize(lsv::implied_vol({1.0, 1.1, 0.25, true, p}));
}
BENCHMARK(bm_implied_vol);

void bm_hw_F(benchmark::State& state) {
    double rho = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lsv::hw_F(rho));
        rho = rho < 3.0 ? rho * 1.01 : 0.5;
    }
}
BENCHMARK(bm_hw_F);

}  // namespace

BENCHMARK_MAIN();
