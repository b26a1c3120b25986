#include <omp.h>

#include "qsdc/analysis.hpp"

namespace qsdc {

namespace {

Episode sample_episode(const EpisodeConfig& config, std::size_t i) {
  return Episode{i + 1, config.hadamard, Role::Check, config.alice_bit};
}

}  // namespace

std::vector<std::uint64_t> sample_outcome_counts(const EpisodeConfig& config, std::size_t samples,
                                                 std::uint64_t seed, Execution execution) {
  const AttackModel attack = attack_for(config.action);
  const std::size_t support = std::size_t{1} << outcome_labels(config.action).size();
  std::vector<std::uint64_t> counts(support, 0);

  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < samples; ++i) {
      RandomStream rng = RandomStream::derive(seed, StreamTag::Sampling, i);
      ++counts[outcome_index(run_episode(sample_episode(config, i), attack, rng), config.action)];
    }
    return counts;
  }

  const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(support, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      RandomStream rng = RandomStream::derive(seed, StreamTag::Sampling, k);
      ++local[outcome_index(run_episode(sample_episode(config, k), attack, rng), config.action)];
    }
#pragma omp critical
    for (std::size_t j = 0; j < support; ++j) counts[j] += local[j];
  }
  return counts;
}

}  // namespace qsdc
