#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/protocol.hpp"

namespace qsdc {

inline constexpr double kZ95 = 1.959963984540054;

struct RateEstimate {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

/// Wilson score interval for `errors` out of `trials`.
RateEstimate wilson_interval(std::size_t errors, std::size_t trials, double z = kZ95);

struct RateSummary {
  RateEstimate check;
  RateEstimate message;  // over the whole encoding sequence
  bool detected = false;
};

/// Throws std::invalid_argument on an empty record set.
RateSummary estimate_rates(const std::vector<EpisodeRecord>& records,
                           const ProtocolParams& params);

// Joint distribution keyed by (x, y); need not be normalized.
using JointDistribution = std::map<std::pair<int, int>, double>;

double entropy_bits(const std::map<int, double>& distribution);
double mutual_information_bits(const JointDistribution& joint);

/// Plug-in estimate from empirical frequencies; 0 for empty or degenerate input.
double empirical_mutual_information(const std::vector<std::pair<int, int>>& pairs);

/// One cell of the exact oracle: a single episode with a fixed Eve action.
enum class AttackAction { None, InterceptZ, InterceptX, Collective, CollectiveH };

const char* to_string(AttackAction action);
std::optional<AttackAction> parse_attack_action(const std::string& name);
AttackModel attack_for(AttackAction action);

struct EpisodeConfig {
  Bit alice_bit = 0;
  bool hadamard = false;
  AttackAction action = AttackAction::None;

  std::string label() const;
};

/// Outcome labels by action (most significant first):
///   none:        a A B
///   intercept:   e a A B   (e = Eve's intercept bit)
///   collective:  a A B E   (E = Eve's ancilla X bit)
/// a and A are Z outcomes, B is Bob's X outcome.
std::vector<std::string> outcome_labels(AttackAction action);

struct ExactDistribution {
  EpisodeConfig config;
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  std::string key(std::size_t outcome) const;
  double total() const;
  /// Marginal over the named outcome labels, indexed in the given order.
  std::vector<double> marginal(const std::vector<std::string>& keep) const;
};

/// Enumerates every measurement branch of the episode by exact projection.
ExactDistribution exact_distribution(const EpisodeConfig& config);

/// P(recover_bit(a, B) != alice_bit) under the exact distribution.
double check_error_probability(const ExactDistribution& dist);

std::size_t outcome_index(const EpisodeRecord& record, AttackAction action);

/// Histogram of `samples` Monte Carlo episodes over the oracle's outcome
/// indices; sample i uses the stream derived from (seed, i).
std::vector<std::uint64_t> sample_outcome_counts(const EpisodeConfig& config, std::size_t samples,
                                                 std::uint64_t seed,
                                                 Execution execution = Execution::Parallel);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Throws std::invalid_argument when samples < 1000.
double oracle_vs_monte_carlo(const EpisodeConfig& config, std::size_t samples, RandomStream& rng,
                             Execution execution = Execution::Parallel);

/// The 2 x 2 x 4 grid of cells exercised by the oracle agreement check.
std::vector<EpisodeConfig> standard_cells();

struct SimulationReport {
  ProtocolParams params;
  AttackModel attack;
  RateEstimate check;
  bool detected = false;
  bool aborted = false;
  std::optional<RateEstimate> message;  // absent on aborted sessions
  std::optional<std::vector<Bit>> recovered_message;
  double eve_mi_bits = 0.0;
  // Same, but Eve also learns Alice's step-9 announcement.
  double eve_mi_with_announcement_bits = 0.0;
  double throughput = 0.0;
  std::map<std::string, double> oracle_tv_distances;
  double elapsed_seconds = 0.0;
  double episodes_per_second = 0.0;
};

SimulationReport make_report(const ProtocolParams& params, const AttackModel& attack,
                             const SessionResult& session, double elapsed_seconds);

}  // namespace qsdc
