// Serial against OpenMP versions of the two field kernels.
#include "solar/heliofield.hpp"

#include <benchmark/benchmark.h>

using namespace solar::field;

namespace {

FieldParams big_field() {
    FieldParams p;
    p.heliostat_w = 10.0;
    p.heliostat_l = 10.0;
    p.tower_h = 150.0;
    p.angular_width = 89.0;
    p.r_min = 0.5;
    p.r_max = 8.0;
    return p;
}

std::vector<SunState> instants() {
    std::vector<SunState> out;
    for (int h = 0; h < 24; ++h) {
        SunState s = sun_position(kDefaultLatitude, 172, h * 60.0 + 30.0);
        if (s.above_horizon) out.push_back(s);
    }
    return out;
}

void rate(benchmark::State& state, Exec exec) {
    const FieldLayout layout = generate_grid(big_field());
    const auto suns = instants();
    for (auto _ : state) benchmark::DoNotOptimize(rate_positions(layout, {12.0, 12.0}, suns, exec));
    state.counters["positions"] = static_cast<double>(layout.capacity);
}

void trace(benchmark::State& state, Exec exec) {
    const FieldParams p = big_field();
    const auto suns = instants();
    const FieldSelection sel = select_best(generate_grid(p), {12.0, 12.0}, suns, 2000);
    const FieldTracer tracer(p, {12.0, 12.0}, sel);
    const SunState noon = sun_position(kDefaultLatitude, 172, 720.0);
    for (auto _ : state) benchmark::DoNotOptimize(tracer.power(noon, static_cast<int>(state.range(0)), exec));
}

}  // namespace

BENCHMARK_CAPTURE(rate, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rate, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(trace, serial, Exec::Serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(trace, parallel, Exec::Parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
