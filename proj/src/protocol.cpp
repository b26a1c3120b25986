#include "qsdc/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsdc {

namespace {

// Guards ceil/round against products like 1000 * 0.3 landing a hair above
// an integer.
constexpr double kCountSlack = 1e-9;

std::vector<bool> choose_subset(std::size_t n, std::size_t k, RandomStream& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> chosen(n, false);
  for (std::size_t i = 0; i < k; ++i) chosen[order[i]] = true;
  return chosen;
}

}  // namespace

std::size_t ProtocolParams::check_count() const {
  return static_cast<std::size_t>(
      std::ceil(static_cast<double>(n_pairs) * check_fraction - kCountSlack));
}

std::size_t ProtocolParams::hadamard_count() const {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n_pairs) * hadamard_fraction));
}

void ProtocolParams::validate() const {
  if (n_pairs == 0) throw std::invalid_argument("pair count must be positive");
  if (!(hadamard_fraction > 0.0 && hadamard_fraction < 1.0)) {
    throw std::invalid_argument("hadamard fraction must lie strictly inside (0, 1)");
  }
  if (!(check_fraction > 0.0 && check_fraction < 1.0)) {
    throw std::invalid_argument("check fraction must lie strictly inside (0, 1)");
  }
  if (!(abort_threshold >= 0.0 && abort_threshold <= 1.0)) {
    throw std::invalid_argument("abort threshold must lie in [0, 1]");
  }
  if (check_count() > n_pairs) throw std::invalid_argument("check sequence exceeds pair count");
  for (Bit b : message) {
    if (b > 1) throw std::invalid_argument("message must consist of bits");
  }
  if (message.size() > message_capacity()) {
    throw std::invalid_argument("message of " + std::to_string(message.size()) +
                                " bits does not fit the " + std::to_string(message_capacity()) +
                                "-pair encoding sequence");
  }
}

std::vector<Episode> plan_episodes(const ProtocolParams& params, RandomStream& rng) {
  params.validate();
  const std::size_t n = params.n_pairs;
  const auto hadamard = choose_subset(n, params.hadamard_count(), rng);
  const auto check = choose_subset(n, params.check_count(), rng);

  std::vector<Episode> plan(n);
  std::size_t next_message_bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Episode& e = plan[i];
    e.index = i + 1;
    e.hadamard_applied = hadamard[i];
    e.role = check[i] ? Role::Check : Role::Message;
    if (e.role == Role::Check) {
      e.alice_bit = rng.bit();
    } else if (next_message_bit < params.message.size()) {
      e.alice_bit = params.message[next_message_bit++];
    } else {
      // Encoding pairs beyond the message carry random filler.
      e.alice_bit = rng.bit();
    }
  }
  return plan;
}

EpisodeRecord run_episode(const Episode& episode, const AttackModel& attack, RandomStream& rng) {
  QuantumState pair = make_epr_pair();

  std::optional<EveRecord> eve;
  bool ancilla = false;
  if (attack.active()) {
    eve.emplace();
    if (rng.bernoulli(attack.probability)) {
      if (attack.kind == AttackKind::InterceptResend) {
        const Basis basis = choose_basis(attack.policy, rng);
        auto result = attack_intercept_resend(pair, slot::kPairBob, basis, rng);
        pair = std::move(result.state);
        eve = result.record;
      } else {
        auto result = attack_collective_cnot(pair, slot::kPairBob, attack.pre_hadamard);
        pair = std::move(result.state);
        eve = result.record;
        ancilla = true;
      }
    }
  }

  if (episode.hadamard_applied) {
    pair = apply_hadamard(pair, slot::kPairBob);
    pair = apply_hadamard(pair, slot::kPairAlice);
  }

  QuantumState s = tensor(encode_message_qubit(episode.alice_bit), pair);
  s = apply_cnot(s, slot::kEncoding, slot::kAlice);
  s = apply_hadamard(s, slot::kEncoding);

  EpisodeRecord record;
  record.episode = episode;
  Measurement m = measure(s, slot::kEncoding, Basis::Z, rng);
  record.alice_a_bit = m.outcome.bit;
  m = measure(m.post, slot::kAlice, Basis::Z, rng);
  record.alice_A_bit = m.outcome.bit;
  m = measure(m.post, slot::kBob, Basis::X, rng);
  record.bob_x_bit = m.outcome.bit;
  if (ancilla) eve = eve_final_measure(m.post, slot::kEve, *eve, rng);
  record.eve = eve;
  return record;
}

CheckOutcome check_phase(const std::vector<EpisodeRecord>& records,
                         const ProtocolParams& params) {
  AliceCheckPositions positions;
  BobCheckResults announced;
  CheckOutcome out;
  for (const auto& r : records) {
    if (r.episode.role != Role::Check) continue;
    positions.positions.push_back(r.episode.index);
    announced.results.emplace_back(r.episode.index, r.bob_x_bit);
    ++out.checked;
    if (recover_bit(r.alice_a_bit, r.bob_x_bit) != r.episode.alice_bit) ++out.errors;
  }
  out.error_rate =
      out.checked == 0 ? 0.0 : static_cast<double>(out.errors) / static_cast<double>(out.checked);
  out.abort = out.error_rate > params.abort_threshold;
  out.entries.emplace_back(std::move(positions));
  out.entries.emplace_back(std::move(announced));
  out.entries.emplace_back(AliceAbortDecision{out.abort, out.error_rate});
  return out;
}

SessionResult run_session(const ProtocolParams& params, const AttackModel& attack,
                          Execution execution) {
  params.validate();
  attack.validate();
  RandomStream planning = RandomStream::derive(params.master_seed, StreamTag::Planning);
  const auto plan = plan_episodes(params, planning);

  SessionResult result;
  BobHadamardPositions hadamard;
  for (const auto& e : plan) {
    if (e.hadamard_applied) hadamard.positions.push_back(e.index);
  }
  result.transcript.emplace_back(std::move(hadamard));

  result.records = run_episodes(plan, attack, params.master_seed, execution);

  CheckOutcome check = check_phase(result.records, params);
  result.aborted = check.abort;
  result.check_error_rate = check.error_rate;
  for (auto& entry : check.entries) result.transcript.push_back(std::move(entry));
  if (result.aborted) return result;

  AliceDResults d_results;
  std::vector<Bit> recovered;
  recovered.reserve(params.message.size());
  for (const auto& r : result.records) {
    if (r.episode.role != Role::Message) continue;
    d_results.results.emplace_back(r.episode.index, r.alice_a_bit);
    if (recovered.size() < params.message.size()) {
      recovered.push_back(recover_bit(r.alice_a_bit, r.bob_x_bit));
    }
  }
  result.transcript.emplace_back(std::move(d_results));
  result.recovered_message = std::move(recovered);
  return result;
}

bool transcript_well_ordered(const Transcript& transcript) {
  // Expected variant index sequence: 0,1,2,3 then optionally 4 iff continue.
  if (transcript.size() < 4 || transcript.size() > 5) return false;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    if (transcript[i].index() != i) return false;
  }
  const bool aborted = std::get<AliceAbortDecision>(transcript[3]).abort;
  return aborted ? transcript.size() == 4 : transcript.size() == 5;
}

}  // namespace qsdc
