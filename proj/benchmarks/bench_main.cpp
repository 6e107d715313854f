#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bceaoi/config.hpp"
#include "bceaoi/event_queue.hpp"
#include "bceaoi/metrics.hpp"
#include "bceaoi/simulation.hpp"

namespace {

using namespace bceaoi;

void BM_EventQueueChurn(benchmark::State& state) {
  const auto depth = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> gap(1.0);
  for (auto _ : state) {
    EventQueue q;
    for (int i = 0; i < depth; ++i) q.schedule(SimTime(gap(rng)), EventKind::kGeneration);
    for (int i = 0; i < 100000; ++i) {
      const Event e = *q.next_event();
      q.schedule(e.time + gap(rng), EventKind::kArrival);
    }
    benchmark::DoNotOptimize(q.size());
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EventQueueChurn)->Arg(16)->Arg(1024)->Arg(65536);

void BM_AverageAoI(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  AoISamplePath path(SimTime(0.0), SimTime(n + 1.0));
  for (int i = 1; i <= n; ++i) path.record_commit(SimTime(i), SimTime(i - 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(average_aoi(path));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AverageAoI)->Arg(1000)->Arg(100000);

// One replication of the default configuration.
void BM_SimulateDefault(benchmark::State& state) {
  SimConfig cfg = paper_default();
  cfg.horizon = static_cast<double>(state.range(0));
  std::uint64_t seed = 1;
  std::uint64_t events = 0;
  for (auto _ : state) {
    const RunSummary r = simulate(cfg, seed++);
    events += r.events_dispatched;
    benchmark::DoNotOptimize(r.delivered);
  }
  state.counters["events/s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateDefault)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SimulateChannels(benchmark::State& state) {
  SimConfig cfg = paper_default();
  cfg.horizon = 500.0;
  cfg.chain.n_channels = static_cast<std::uint32_t>(state.range(0));
  cfg.source.total_rate = 10.0 * static_cast<double>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, seed++).delivered);
}
BENCHMARK(BM_SimulateChannels)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
