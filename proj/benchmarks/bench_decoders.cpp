#include <benchmark/benchmark.h>

#include "grand/channel.hpp"
#include "grand/codes.hpp"
#include "grand/decoder_spec.hpp"

using namespace grand;

namespace {

// Decodes a fixed set of CRC(128,112) frames at the given Eb/N0 (range(0) / 10 dB).
void run(benchmark::State& state, const DecoderSpec& spec) {
  static const LinearCode code = crc_code(128, CrcPolynomial::from_hex("0x1021"));
  ChannelConfig cfg;
  cfg.ebn0_db = static_cast<double>(state.range(0)) / 10.0;
  cfg.rate = code.rate();
  std::vector<std::vector<double>> frames;
  for (std::uint64_t f = 0; f < 256; ++f) {
    FrameRng rng = make_frame_rng(cfg.seed, f);
    frames.push_back(transmit_frame(code, cfg, rng).llr);
  }
  std::uint64_t queries = 0;
  std::size_t i = 0;
  for (auto _ : state) {
    const DecodeResult r = decode(spec, frames[i++ % frames.size()], code);
    queries += r.queries;
    benchmark::DoNotOptimize(r);
  }
  state.counters["queries/frame"] =
      benchmark::Counter(static_cast<double>(queries) / static_cast<double>(state.iterations()));
}

void BM_Grandab(benchmark::State& s) { run(s, GrandabParams{2}); }
void BM_Orbgrand(benchmark::State& s) { run(s, OrbgrandParams{96, 8}); }
void BM_Sgrand(benchmark::State& s) { run(s, SgrandParams{}); }
void BM_Lgrand(benchmark::State& s) { run(s, LgrandParams{96, 8, 15}); }

BENCHMARK(BM_Grandab)->Arg(40)->Arg(60);
BENCHMARK(BM_Orbgrand)->Arg(40)->Arg(60);
BENCHMARK(BM_Sgrand)->Arg(40)->Arg(60);
BENCHMARK(BM_Lgrand)->Arg(40)->Arg(60);

}  // namespace
