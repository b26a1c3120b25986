// Serial reference vs OpenMP kernels for episode execution and oracle sampling.

#include <benchmark/benchmark.h>

#include "qsdc/analysis.hpp"
#include "qsdc/protocol.hpp"

namespace {

std::vector<qsdc::Episode> make_plan(std::size_t pairs) {
  qsdc::ProtocolParams params;
  params.n_pairs = pairs;
  params.master_seed = 11;
  auto rng = qsdc::RandomStream::derive(params.master_seed, qsdc::StreamTag::Planning);
  return qsdc::plan_episodes(params, rng);
}

void run_episodes(benchmark::State& state, qsdc::Execution execution) {
  const auto plan = make_plan(static_cast<std::size_t>(state.range(0)));
  const auto attack = qsdc::AttackModel::collective(false);
  for (auto _ : state) {
    auto records = qsdc::run_episodes(plan, attack, 11, execution);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EpisodesSerial(benchmark::State& state) { run_episodes(state, qsdc::Execution::Serial); }
void BM_EpisodesParallel(benchmark::State& state) {
  run_episodes(state, qsdc::Execution::Parallel);
}

void sample_counts(benchmark::State& state, qsdc::Execution execution) {
  const qsdc::EpisodeConfig cell{0, true, qsdc::AttackAction::InterceptX};
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto counts = qsdc::sample_outcome_counts(cell, samples, 5, execution);
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SamplingSerial(benchmark::State& state) { sample_counts(state, qsdc::Execution::Serial); }
void BM_SamplingParallel(benchmark::State& state) {
  sample_counts(state, qsdc::Execution::Parallel);
}

}  // namespace

BENCHMARK(BM_EpisodesSerial)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EpisodesParallel)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplingSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplingParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
