#include <benchmark/benchmark.h>

#include "grand/channel.hpp"
#include "grand/patterns.hpp"

using namespace grand;

namespace {

ReliabilityOrder random_order(std::size_t n) {
  FrameRng rng = make_frame_rng(3, 0);
  GaussianSource g;
  std::vector<double> llr(n);
  for (double& v : llr) v = 2.0 + 2.0 * g(rng);
  return sort_reliability(llr);
}

void BM_GrandabStream(benchmark::State& state) {
  const auto ab = static_cast<std::size_t>(state.range(0));
  std::int64_t emitted = 0;
  for (auto _ : state) {
    GrandabStream s(128, ab);
    while (const auto* p = s.next_support()) {
      benchmark::DoNotOptimize(p);
      ++emitted;
    }
  }
  state.SetItemsProcessed(emitted);
}
BENCHMARK(BM_GrandabStream)->Arg(2)->Arg(3);

void BM_OrbgrandStream(benchmark::State& state) {
  const ReliabilityOrder ord = random_order(128);
  std::int64_t emitted = 0;
  for (auto _ : state) {
    OrbgrandStream s(ord, static_cast<std::uint64_t>(state.range(0)), 8);
    while (const auto* p = s.next_partition()) {
      benchmark::DoNotOptimize(p);
      ++emitted;
    }
  }
  state.SetItemsProcessed(emitted);
}
BENCHMARK(BM_OrbgrandStream)->Arg(64)->Arg(96);

void BM_SgrandStream(benchmark::State& state) {
  const ReliabilityOrder ord = random_order(128);
  const auto budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    SgrandStream s(ord, budget);
    while (const auto* r = s.next_ranks()) benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * budget));
}
BENCHMARK(BM_SgrandStream)->Arg(10000)->Arg(100000);

}  // namespace
