#include <random>

#include <benchmark/benchmark.h>

#include "shiftr/circulant.hpp"
#include "shiftr/compressive.hpp"
#include "shiftr/retrieval.hpp"
#include "shiftr/spectral.hpp"

namespace {

using namespace shiftr;

Signal gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Signal x(n);
  for (auto& v : x) v = dist(gen);
  return x;
}

void BM_Dft(benchmark::State& state) {
  const Signal x = gaussian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(4)->Range(1 << 6, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_DftBin(benchmark::State& state) {
  const Signal x = gaussian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft_bin(x, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftBin)->RangeMultiplier(4)->Range(1 << 6, 1 << 20)->Complexity(benchmark::oN);

template <typename Estimator>
void run_retrieval(benchmark::State& state, Estimator estimate) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Signal x = gaussian(n, 2);
  const Signal y = delay(x, n / 3);
  for (auto _ : state) benchmark::DoNotOptimize(estimate(x, y).shift);
  state.SetComplexityN(state.range(0));
}

void BM_Crosscorr(benchmark::State& state) {
  run_retrieval(state, [](const Signal& x, const Signal& y) { return shift_by_crosscorr(x, y); });
}
BENCHMARK(BM_Crosscorr)->RangeMultiplier(4)->Range(1 << 6, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_Ratio(benchmark::State& state) {
  run_retrieval(state, [](const Signal& x, const Signal& y) { return shift_by_ratio(x, y); });
}
BENCHMARK(BM_Ratio)->RangeMultiplier(4)->Range(1 << 6, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_SingleBin(benchmark::State& state) {
  SingleBinOptions opt;
  opt.bin = 1;
  run_retrieval(state, [&](const Signal& x, const Signal& y) {
    return shift_single_bin(x, y, opt);
  });
}
BENCHMARK(BM_SingleBin)->RangeMultiplier(4)->Range(1 << 6, 1 << 20)->Complexity(benchmark::oN);

// Estimation cost from precomputed measurements, m bins at n = 4096.
void BM_CompressiveRatio(benchmark::State& state) {
  const std::size_t n = 4096;
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m; ++i) idx.push_back(1 + 2 * i);
  const SensingSet K(n, idx);
  const Signal x = gaussian(n, 3);
  const Measurement v = measure(x, K), z = measure(delay(x, 1234), K);
  for (auto _ : state) benchmark::DoNotOptimize(shift_by_compressive_ratio(z, v).shift);
}
BENCHMARK(BM_CompressiveRatio)->RangeMultiplier(4)->Range(1, 256);

void BM_CompressiveArgmax(benchmark::State& state) {
  const std::size_t n = 4096;
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m; ++i) idx.push_back(1 + 2 * i);
  const SensingSet K(n, idx);
  const Signal x = gaussian(n, 4);
  const Measurement v = measure(x, K), z = measure(delay(x, 1234), K);
  for (auto _ : state) benchmark::DoNotOptimize(shift_by_compressive_argmax(z, v).shift);
}
BENCHMARK(BM_CompressiveArgmax)->RangeMultiplier(4)->Range(1, 256);

void BM_LsCirculantFit(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Signal data = gaussian(static_cast<std::size_t>(2 * n * 4), 5);
  RealMatrix X = Eigen::Map<const RealMatrix>(data.data(), n, 4);
  RealMatrix Y = Eigen::Map<const RealMatrix>(data.data() + n * 4, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ls_circulant_fit(X, Y).residual);
}
BENCHMARK(BM_LsCirculantFit)->RangeMultiplier(8)->Range(8, 1 << 15);

}  // namespace

BENCHMARK_MAIN();
