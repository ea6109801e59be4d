#include <numbers>

#include <benchmark/benchmark.h>

#include "msrimg/foldy_lax.hpp"
#include "msrimg/forward.hpp"
#include "msrimg/imaging.hpp"
#include "msrimg/scenario.hpp"

using namespace msrimg;

namespace {

struct Table1 {
  Scenario s = preset("table1-gamma1");
  FrequencyContext ctx = frequency_context(s.medium, s.omega_max);
  DirectionSet dirs = build_directions(s.direction_count, s.alpha, s.beta, ctx);
};

void BM_AssembleFine(benchmark::State& state) {
  Table1 t;
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_msr_fine(t.s.inclusions, t.s.medium, t.ctx, t.dirs, t.ctx.lambda_minus / 20));
}
BENCHMARK(BM_AssembleFine);

void BM_AssembleFactored(benchmark::State& state) {
  Table1 t;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_msr_factored(t.s.inclusions, t.s.medium, t.ctx, t.dirs).product());
}
BENCHMARK(BM_AssembleFactored);

void BM_AssembleFoldyLax(benchmark::State& state) {
  Table1 t;
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_msr_foldylax(t.s.inclusions, t.s.medium, t.ctx, t.dirs, t.ctx.lambda_minus / 20));
}
BENCHMARK(BM_AssembleFoldyLax)->Unit(benchmark::kMillisecond);

void BM_ImageSingle(benchmark::State& state) {
  Table1 t;
  const auto k = assemble_msr_fine(t.s.inclusions, t.s.medium, t.ctx, t.dirs, t.ctx.lambda_minus / 20);
  const Grid g = make_grid(t.s.search_domain, 0.02);
  const auto svd = truncate_svd(k, 0.01);
  const auto waves = transmitted_waves(t.ctx, t.s.medium, t.dirs);
  for (auto _ : state) benchmark::DoNotOptimize(image_single(svd, waves, {1, 0, 0}, g));
}
BENCHMARK(BM_ImageSingle)->Unit(benchmark::kMillisecond);

void BM_TruncateSvd(benchmark::State& state) {
  Table1 t;
  const auto k = assemble_msr_fine(t.s.inclusions, t.s.medium, t.ctx, t.dirs, t.ctx.lambda_minus / 20);
  for (auto _ : state) benchmark::DoNotOptimize(truncate_svd(k, 0.01));
}
BENCHMARK(BM_TruncateSvd);

}  // namespace

BENCHMARK_MAIN();
