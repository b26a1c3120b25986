#pragma once

#include <optional>
#include <string>

#include "qsdc/qcore.hpp"
#include "qsdc/random.hpp"

namespace qsdc {

enum class AttackKind { None, InterceptResend, CollectiveCnot };

/// How an intercept-resend Eve picks her measurement basis per episode.
enum class BasisPolicy { AlwaysZ, AlwaysX, UniformRandom };

/// Eve's strategy for a whole session. `probability` is the per-episode
/// chance that she touches the in-transit particle at all.
struct AttackModel {
  AttackKind kind = AttackKind::None;
  BasisPolicy policy = BasisPolicy::AlwaysZ;
  bool pre_hadamard = false;
  double probability = 1.0;

  static AttackModel none() { return {}; }
  static AttackModel intercept_resend(BasisPolicy policy, double probability = 1.0) {
    return {AttackKind::InterceptResend, policy, false, probability};
  }
  static AttackModel collective(bool pre_hadamard, double probability = 1.0) {
    return {AttackKind::CollectiveCnot, BasisPolicy::AlwaysZ, pre_hadamard, probability};
  }

  bool active() const { return kind != AttackKind::None; }
  void validate() const;
};

/// CLI spelling: none, ir-z, ir-x, ir-random, collective, collective-h.
std::string attack_name(const AttackModel& attack);
std::optional<AttackModel> parse_attack(const std::string& name, double probability = 1.0);

/// What Eve did and saw on one episode. `acted` is false when the
/// per-episode coin told her to let the particle pass.
struct EveRecord {
  bool acted = false;
  std::optional<Basis> intercept_basis;
  std::optional<Bit> intercept_bit;
  std::optional<Bit> ancilla_x_bit;
};

struct AttackResult {
  QuantumState state;
  EveRecord record;
};

Basis choose_basis(BasisPolicy policy, RandomStream& rng);

/// Measures qubit_B in `basis` and replaces it with the resent particle:
/// Z outcome 0 -> |+>, 1 -> |->; an X outcome resends the collapsed eigenstate.
AttackResult attack_intercept_resend(const QuantumState& state, int qubit_B, Basis basis,
                                     RandomStream& rng);

/// Appends Eve's ancilla |0> as the last qubit and copies qubit_B into it with
/// CNOT(B -> ancilla). With `pre_hadamard` the CNOT is conjugated by Hadamards
/// on B, which copies the X value instead of the Z value.
AttackResult attack_collective_cnot(const QuantumState& state, int qubit_B, bool pre_hadamard);

/// X-basis measurement of the ancilla, folded into `record`.
EveRecord eve_final_measure(const QuantumState& state, int ancilla, EveRecord record,
                            RandomStream& rng);

}  // namespace qsdc
