#include "qsdc/adversary.hpp"

#include <stdexcept>

namespace qsdc {

void AttackModel::validate() const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("attack probability must lie in [0, 1]");
  }
}

std::string attack_name(const AttackModel& attack) {
  switch (attack.kind) {
    case AttackKind::None:
      return "none";
    case AttackKind::InterceptResend:
      switch (attack.policy) {
        case BasisPolicy::AlwaysZ:
          return "ir-z";
        case BasisPolicy::AlwaysX:
          return "ir-x";
        case BasisPolicy::UniformRandom:
          return "ir-random";
      }
      break;
    case AttackKind::CollectiveCnot:
      return attack.pre_hadamard ? "collective-h" : "collective";
  }
  throw std::logic_error("unhandled attack model");
}

std::optional<AttackModel> parse_attack(const std::string& name, double probability) {
  if (name == "none") return AttackModel::none();
  if (name == "ir-z") return AttackModel::intercept_resend(BasisPolicy::AlwaysZ, probability);
  if (name == "ir-x") return AttackModel::intercept_resend(BasisPolicy::AlwaysX, probability);
  if (name == "ir-random") {
    return AttackModel::intercept_resend(BasisPolicy::UniformRandom, probability);
  }
  if (name == "collective") return AttackModel::collective(false, probability);
  if (name == "collective-h") return AttackModel::collective(true, probability);
  return std::nullopt;
}

Basis choose_basis(BasisPolicy policy, RandomStream& rng) {
  switch (policy) {
    case BasisPolicy::AlwaysZ:
      return Basis::Z;
    case BasisPolicy::AlwaysX:
      return Basis::X;
    case BasisPolicy::UniformRandom:
      return rng.bit() ? Basis::X : Basis::Z;
  }
  throw std::logic_error("unhandled basis policy");
}

AttackResult attack_intercept_resend(const QuantumState& state, int qubit_B, Basis basis,
                                     RandomStream& rng) {
  Measurement m = measure(state, qubit_B, basis, rng);
  const Bit bit = m.outcome.bit;
  // After the collapse B is exactly the measured eigenstate, so contracting
  // against it leaves the rest of the system untouched.
  QuantumState rest = remove_qubit(m.post, qubit_B, eigenstate(basis, bit));
  // Both resend rules coincide: Z outcome b is resent as the X eigenstate b,
  // and an X outcome b is resent as itself.
  QuantumState resent = eigenstate(Basis::X, bit);
  EveRecord record;
  record.acted = true;
  record.intercept_basis = basis;
  record.intercept_bit = bit;
  return {insert_qubit(rest, qubit_B, resent), record};
}

AttackResult attack_collective_cnot(const QuantumState& state, int qubit_B, bool pre_hadamard) {
  if (state.num_qubits() + 1 > kMaxQubits) {
    throw std::invalid_argument("no room for Eve's ancilla");
  }
  QuantumState s = tensor(state, basis_state(1, "0"));
  const int ancilla = s.num_qubits() - 1;
  if (pre_hadamard) s = apply_hadamard(s, qubit_B);
  s = apply_cnot(s, qubit_B, ancilla);
  if (pre_hadamard) s = apply_hadamard(s, qubit_B);
  EveRecord record;
  record.acted = true;
  return {std::move(s), record};
}

EveRecord eve_final_measure(const QuantumState& state, int ancilla, EveRecord record,
                            RandomStream& rng) {
  record.ancilla_x_bit = measure(state, ancilla, Basis::X, rng).outcome.bit;
  return record;
}

}  // namespace qsdc
