#include <benchmark/benchmark.h>

#include <vector>

#include "ou/experiments.hpp"
#include "ou/measure.hpp"
#include "ou/mehler.hpp"
#include "ou/quadrature.hpp"

namespace {

// Uncached node generation, measured at fresh orders each iteration batch.
void BM_HermiteRule(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ou::gauss_hermite_rule(order).nodes.data());
    ++order;
  }
}
BENCHMARK(BM_HermiteRule)->Arg(64)->Arg(512)->Iterations(8);

void BM_MehlerLog(benchmark::State& state) {
  const ou::TimeParam t(0.5);
  const ou::Point x{0.3, -1.2, 2.0};
  const ou::Point y{1.1, 0.4, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(ou::mehler_log(t, x, y));
}
BENCHMARK(BM_MehlerLog);

void BM_ApplyIndicator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ou::TimeParam t(0.5);
  const ou::Ball ball = ou::make_maximal_admissible_ball(ou::Point::on_axis(n, 4.0));
  const ou::Point y = ou::Point::on_axis(n, 4.5);
  const ou::QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(ou::apply_indicator_log(t, ball, y, spec));
}
BENCHMARK(BM_ApplyIndicator)->Arg(1)->Arg(2)->Arg(3);

void BM_GammaBall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ou::Ball ball = ou::make_maximal_admissible_ball(ou::Point::on_axis(n, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(ou::gamma_log(ball));
}
BENCHMARK(BM_GammaBall)->Arg(1)->Arg(2)->Arg(3);

void BM_OffDiagLhs(benchmark::State& state) {
  const ou::TimeParam t(0.5);
  const ou::Ball ball = ou::make_maximal_admissible_ball(ou::Point{8.0});
  const ou::QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(ou::offdiag_lhs_log(t, 2.0, ball, 1, spec));
}
BENCHMARK(BM_OffDiagLhs)->Unit(benchmark::kMillisecond);

void BM_SweepBlowup(benchmark::State& state) {
  const std::vector<double> grid{4.0, 6.0, 8.0, 10.0, 12.0};
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ou::sweep_blowup({}, ou::TimeParam(0.5), 1, 1, grid, {}, parallel));
  }
}
BENCHMARK(BM_SweepBlowup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
