#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "lwdist/estimation.hpp"
#include "lwdist/lambert_exponential.hpp"
#include "lwdist/lambert_normal.hpp"
#include "lwdist/wfun.hpp"

namespace {

void BM_W0_Moderate(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::lambert_w0(x).value);
    x = x < 8.0 ? x + 0.37 : 0.1;  // sweep the Winitzki-guess range
  }
}
BENCHMARK(BM_W0_Moderate);

void BM_W0_NearBranchPoint(benchmark::State& state) {
  const double x = -0.36787944;  // 1 + e x ~ 3e-9
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::lambert_w0(x).value);
  }
}
BENCHMARK(BM_W0_NearBranchPoint);

void BM_W0_Large(benchmark::State& state) {
  const double x = 1e12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::lambert_w0(x).value);
  }
}
BENCHMARK(BM_W0_Large);

void BM_Wm1_Moderate(benchmark::State& state) {
  const double x = -0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::lambert_wm1(x).value);
  }
}
BENCHMARK(BM_Wm1_Moderate);

void BM_Wm1_NearZero(benchmark::State& state) {
  const double x = -1e-9;  // log-form Newton path
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::lambert_wm1(x).value);
  }
}
BENCHMARK(BM_Wm1_NearZero);

void BM_WNormal_PdfSingleBranch(benchmark::State& state) {
  const lwdist::WNormalParams p{0.0, 1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::pdf(p, 1.7));
  }
}
BENCHMARK(BM_WNormal_PdfSingleBranch);

void BM_WNormal_PdfTwoBranch(benchmark::State& state) {
  const lwdist::WNormalParams p{0.0, 1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::pdf(p, -0.55));
  }
}
BENCHMARK(BM_WNormal_PdfTwoBranch);

void BM_WNormal_Cdf(benchmark::State& state) {
  const lwdist::WNormalParams p{0.0, 1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwdist::cdf(p, 0.8));
  }
}
BENCHMARK(BM_WNormal_Cdf);

void BM_WExp_LogLik10k(benchmark::State& state) {
  const lwdist::WExpParams p{0.08, 0.496};
  const std::vector<double> data = lwdist::sample(p, 10000, 42);
  const lwdist::ParamVector params{
      {"lambda", 0.08, lwdist::Constraint::positive},
      {"gamma", 0.496, lwdist::Constraint::free}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lwdist::log_likelihood("wexp", params, data).value);
  }
}
BENCHMARK(BM_WExp_LogLik10k);

void BM_WNormal_LogLik10k(benchmark::State& state) {
  const lwdist::WNormalParams p{13.444, 28.829, 0.789};
  const std::vector<double> data = lwdist::sample(p, 10000, 42);
  const lwdist::ParamVector params{
      {"mu", 13.444, lwdist::Constraint::free},
      {"sigma", 28.829, lwdist::Constraint::positive},
      {"gamma", 0.789, lwdist::Constraint::free}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lwdist::log_likelihood("wnormal", params, data).value);
  }
}
BENCHMARK(BM_WNormal_LogLik10k);

}  // namespace

BENCHMARK_MAIN();
