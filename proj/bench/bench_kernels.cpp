// Serial reference vs OpenMP kernels.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "ccq/certify.hpp"
#include "ccq/kernels.hpp"
#include "ccq/suite.hpp"

namespace {

using namespace ccq;

std::vector<double> log_samples(std::size_t n) {
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = 3 * std::log(1 + static_cast<double>(i) / n);
  return g;
}

void BM_DefectScanSerial(benchmark::State& st) {
  const auto g = log_samples(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::midpoint_defects(g, kernels::Scale::Log));
  st.SetComplexityN(st.range(0));
}

void BM_DefectScanOmp(benchmark::State& st) {
  const auto g = log_samples(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::midpoint_defects(g, kernels::Scale::Log));
  st.SetComplexityN(st.range(0));
}

BENCHMARK(BM_DefectScanSerial)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_DefectScanOmp)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

CertRequest composite_request(int n) {
  CertRequest r(make_catalog_fn("recip"), Interval(0.5, 3));
  r.family = Family::ConvexQ;
  r.subdivisions = n;
  return r;
}

void BM_CompositeSerial(benchmark::State& st) {
  const CertRequest r = composite_request(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::composite_certify(r).total_bound);
}

void BM_CompositeOmp(benchmark::State& st) {
  const CertRequest r = composite_request(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(composite_certify(r).total_bound);
}

BENCHMARK(BM_CompositeSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompositeOmp)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SuiteSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::run_suite(SuiteConfig{7, 5, 20}).passed);
}

void BM_SuiteOmp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(SuiteConfig{7, 5, 20}).passed);
}

BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SuiteOmp)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
