#include <benchmark/benchmark.h>

#include <random>

#include "lfc/codec/range_coder.hpp"
#include "lfc/codec/transform.hpp"
#include "lfc/codec/view_codec.hpp"
#include "lfc/pipeline.hpp"
#include "lfc/synthetic.hpp"

namespace {

lfc::ViewGrid bench_grid(int n, int size) {
  lfc::SyntheticConfig cfg;
  cfg.rows = n;
  cfg.cols = n;
  cfg.width = size;
  cfg.height = size;
  return lfc::generate_synthetic(cfg);
}

void BM_ForwardTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-255, 255);
  std::vector<std::int32_t> block(static_cast<std::size_t>(n) * n);
  for (auto& v : block) v = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(lfc::forward_transform(block, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ForwardTransform)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_InverseTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::int32_t> coeffs(static_cast<std::size_t>(n) * n, 0);
  coeffs[0] = 400;
  coeffs[1] = -37;
  coeffs[static_cast<std::size_t>(n)] = 12;
  for (auto _ : state) benchmark::DoNotOptimize(lfc::inverse_transform(coeffs, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_InverseTransform)->Arg(8)->Arg(32)->Arg(64);

void BM_RangeCoder(benchmark::State& state) {
  std::mt19937 rng(2);
  std::bernoulli_distribution d(0.1);
  std::vector<std::uint8_t> bits(100000);
  for (auto& b : bits) b = d(rng);
  for (auto _ : state) {
    const auto bytes = lfc::entropy_encode(bits);
    benchmark::DoNotOptimize(lfc::entropy_decode(bytes, bits.size()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bits.size()));
}
BENCHMARK(BM_RangeCoder);

// Inter view with its neighbour as reference, full search vs depth prediction
// taken from the reference's own depth map.
void BM_EncodeView(benchmark::State& state) {
  const bool fast = state.range(0) != 0;
  const lfc::ViewGrid g = bench_grid(3, 128);
  const lfc::Picture& ref_src = g.at(1, 1);
  const lfc::Picture& view = g.at(1, 2);
  const auto ref = lfc::encode_view(ref_src, {}, lfc::RdoConfig::for_qp(32));
  const std::vector<const lfc::Picture*> refs = {&ref.recon};
  const lfc::DepthMap* maps[] = {&ref.depth};
  const lfc::DepthPrediction pred(maps, view.width, view.height);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lfc::encode_view(view, refs, lfc::RdoConfig::for_qp(32), fast ? &pred : nullptr));
  }
}
BENCHMARK(BM_EncodeView)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EncodeLightfield(benchmark::State& state) {
  const lfc::ViewGrid g = bench_grid(7, 64);
  lfc::EncodeJob job;
  job.fast_depth = true;
  job.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(lfc::encode_lightfield(g, job));
}
BENCHMARK(BM_EncodeLightfield)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
