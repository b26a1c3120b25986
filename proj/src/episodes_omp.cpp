#include <omp.h>

#include "qsdc/protocol.hpp"

namespace qsdc {

namespace {

std::vector<EpisodeRecord> run_serial(const std::vector<Episode>& plan, const AttackModel& attack,
                                      std::uint64_t master_seed) {
  std::vector<EpisodeRecord> records(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    RandomStream rng = RandomStream::derive(master_seed, StreamTag::Episode, plan[i].index);
    records[i] = run_episode(plan[i], attack, rng);
  }
  return records;
}

std::vector<EpisodeRecord> run_parallel(const std::vector<Episode>& plan,
                                        const AttackModel& attack, std::uint64_t master_seed) {
  std::vector<EpisodeRecord> records(plan.size());
  const auto n = static_cast<std::int64_t>(plan.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream rng = RandomStream::derive(master_seed, StreamTag::Episode, plan[i].index);
    records[i] = run_episode(plan[i], attack, rng);
  }
  return records;
}

}  // namespace

std::vector<EpisodeRecord> run_episodes(const std::vector<Episode>& plan,
                                        const AttackModel& attack, std::uint64_t master_seed,
                                        Execution execution) {
  attack.validate();
  return execution == Execution::Serial ? run_serial(plan, attack, master_seed)
                                        : run_parallel(plan, attack, master_seed);
}

}  // namespace qsdc
