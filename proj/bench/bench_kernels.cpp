// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "mcoac/analysis.hpp"
#include "mcoac/oac_codec.hpp"

using namespace mcoac;

namespace {

struct SuperposeCase {
  ResourceMap map;
  std::vector<GridSymbols> grids;
  std::vector<Transmission> txs;
  ChannelRealization channel;

  explicit SuperposeCase(std::size_t q, std::size_t transmitters)
      : map(make_resource_map(q, 1200)), channel(make_channel(FadingModel::epa(), 1, 0, Purpose::kChannelUl)) {
    for (std::uint64_t k = 0; k < transmitters; ++k) {
      SignVector v(q);
      CounterRng rng(StreamId{1, 0, k, Purpose::kBatch});
      for (std::size_t i = 0; i < q; ++i) v.set(i, fair_sign(rng));
      grids.push_back(encode_votes(v, map, 2.0, StreamId{1, 0, k, Purpose::kQpskUl}));
    }
    for (std::uint64_t k = 0; k < transmitters; ++k) txs.push_back({&grids[k], 1.0, k});
  }
};

SuperposeCase& shared_case() {
  static SuperposeCase c(20000, 12);
  return c;
}

void BM_SuperposeReference(benchmark::State& state) {
  auto& c = shared_case();
  const ReceiverSide rx{&c.channel, 0.01, 7};
  for (auto _ : state) benchmark::DoNotOptimize(reference::superpose(c.txs, c.map, rx));
}

void BM_SuperposeParallel(benchmark::State& state) {
  auto& c = shared_case();
  const ReceiverSide rx{&c.channel, 0.01, 7};
  for (auto _ : state) benchmark::DoNotOptimize(superpose(c.txs, c.map, rx, static_cast<int>(state.range(0))));
}

const ConnectivityParams kCp{6, 3, 2.0, 0.01, 0.01};

void BM_TwoHopReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::mc_two_hop_error(kCp, 0.8, 1 << 20, 3));
}

void BM_TwoHopParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(mc_two_hop_error(kCp, 0.8, 1 << 20, 3, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_SuperposeReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuperposeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoHopReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoHopParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
