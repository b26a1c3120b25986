#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/qcore.hpp"
#include "qsdc/random.hpp"

namespace qsdc {

/// Qubit positions inside one episode's state vector.
namespace slot {
// The bare pair, while B is in transit.
inline constexpr int kPairAlice = 0;
inline constexpr int kPairBob = 1;
// After Alice prepends her encoding particle: (a, A, B[, E]).
inline constexpr int kEncoding = 0;
inline constexpr int kAlice = 1;
inline constexpr int kBob = 2;
inline constexpr int kEve = 3;
}  // namespace slot

struct ProtocolParams {
  std::size_t n_pairs = 0;
  double hadamard_fraction = 0.5;
  double check_fraction = 0.5;
  double abort_threshold = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<Bit> message;

  std::size_t check_count() const;
  std::size_t hadamard_count() const;
  /// Size of the encoding (D) sequence.
  std::size_t message_capacity() const { return n_pairs - check_count(); }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

enum class Role { Check, Message };

struct Episode {
  std::size_t index = 1;  // 1-based position in the pair sequence
  bool hadamard_applied = false;
  Role role = Role::Message;
  Bit alice_bit = 0;
};

struct EpisodeRecord {
  Episode episode;
  Bit alice_a_bit = 0;
  Bit alice_A_bit = 0;
  Bit bob_x_bit = 0;
  std::optional<EveRecord> eve;
};

// Classical announcements, in the order they are made.
struct BobHadamardPositions {
  std::vector<std::size_t> positions;
};
struct AliceCheckPositions {
  std::vector<std::size_t> positions;
};
struct BobCheckResults {
  std::vector<std::pair<std::size_t, Bit>> results;
};
struct AliceAbortDecision {
  bool abort = false;
  double error_rate = 0.0;
};
struct AliceDResults {
  std::vector<std::pair<std::size_t, Bit>> results;
};

using TranscriptEntry = std::variant<BobHadamardPositions, AliceCheckPositions, BobCheckResults,
                                     AliceAbortDecision, AliceDResults>;
using Transcript = std::vector<TranscriptEntry>;

/// True when entries follow the announcement order and D results are only
/// published after a continue decision.
bool transcript_well_ordered(const Transcript& transcript);

struct SessionResult {
  bool aborted = false;
  double check_error_rate = 0.0;
  std::optional<std::vector<Bit>> recovered_message;
  Transcript transcript;
  std::vector<EpisodeRecord> records;
};

struct CheckOutcome {
  double error_rate = 0.0;
  std::size_t errors = 0;
  std::size_t checked = 0;
  bool abort = false;
  Transcript entries;
};

enum class Execution { Serial, Parallel };

std::vector<Episode> plan_episodes(const ProtocolParams& params, RandomStream& rng);

/// One pair's full lifecycle: EPR creation, Eve in transit, the Hadamard
/// layer, Alice's encoding, and the final measurements.
EpisodeRecord run_episode(const Episode& episode, const AttackModel& attack, RandomStream& rng);

/// Table 1: Bob's X outcome (0 = |+>, 1 = |->) combined with Alice's a outcome.
constexpr Bit recover_bit(Bit alice_a_bit, Bit bob_x_bit) {
  return static_cast<Bit>(alice_a_bit ^ bob_x_bit);
}

CheckOutcome check_phase(const std::vector<EpisodeRecord>& records, const ProtocolParams& params);

/// Runs every planned episode; episode i draws from the stream derived from
/// (master_seed, i), so both execution modes give identical records.
std::vector<EpisodeRecord> run_episodes(const std::vector<Episode>& plan,
                                        const AttackModel& attack, std::uint64_t master_seed,
                                        Execution execution = Execution::Parallel);

SessionResult run_session(const ProtocolParams& params, const AttackModel& attack,
                          Execution execution = Execution::Parallel);

}  // namespace qsdc
