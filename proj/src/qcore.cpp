#include "qsdc/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc {

struct StateBuilder {
  static QuantumState make(int num_qubits, std::vector<Amplitude> amps) {
    return QuantumState(num_qubits, std::move(amps), QuantumState::Unchecked{});
  }
};

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

void check_index(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(state.num_qubits()) + "-qubit state");
  }
}

std::size_t mask_of(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void hadamard_in_place(std::vector<Amplitude>& amps, int num_qubits, int qubit) {
  const std::size_t mask = mask_of(num_qubits, qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Amplitude lo = amps[i];
    const Amplitude hi = amps[i | mask];
    amps[i] = (lo + hi) * kInvSqrt2;
    amps[i | mask] = (lo - hi) * kInvSqrt2;
  }
}

double sum_norm(const std::vector<Amplitude>& amps) {
  double total = 0.0;
  for (const auto& a : amps) total += std::norm(a);
  return total;
}

}  // namespace

const char* to_string(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

QuantumState::QuantumState(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("amplitude vector length does not match 2^num_qubits");
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

double QuantumState::norm_squared() const { return sum_norm(amplitudes_); }

std::string OutcomeTable::key(std::size_t outcome) const {
  std::string out(plan.size(), '0');
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (outcome & (std::size_t{1} << (plan.size() - 1 - k))) out[k] = '1';
  }
  return out;
}

double OutcomeTable::at(std::string_view key) const {
  if (key.size() != plan.size()) throw std::invalid_argument("outcome key length mismatch");
  std::size_t index = 0;
  for (char c : key) {
    if (c != '0' && c != '1') throw std::invalid_argument("outcome key must be a bit-string");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return probabilities[index];
}

double OutcomeTable::total() const {
  double total = 0.0;
  for (double p : probabilities) total += p;
  return total;
}

QuantumState basis_state(int num_qubits, std::string_view label) {
  check_qubit_count(num_qubits);
  if (label.size() != static_cast<std::size_t>(num_qubits)) {
    throw std::invalid_argument("label length must equal the qubit count");
  }
  std::size_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1') throw std::invalid_argument("label must contain only 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  amps[index] = 1.0;
  return StateBuilder::make(num_qubits, std::move(amps));
}

QuantumState make_epr_pair() {
  return StateBuilder::make(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
}

QuantumState eigenstate(Basis basis, Bit bit) {
  if (bit > 1) throw std::invalid_argument("bit must be 0 or 1");
  if (basis == Basis::Z) return basis_state(1, bit ? "1" : "0");
  return StateBuilder::make(1, {kInvSqrt2, bit ? -kInvSqrt2 : kInvSqrt2});
}

QuantumState encode_message_qubit(Bit bit) { return eigenstate(Basis::X, bit); }

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) {
    throw std::invalid_argument("tensor product would exceed " + std::to_string(kMaxQubits) +
                                " qubits");
  }
  std::vector<Amplitude> amps;
  amps.reserve(a.dimension() * b.dimension());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  }
  return StateBuilder::make(n, std::move(amps));
}

QuantumState apply_hadamard(const QuantumState& state, int qubit) {
  check_index(state, qubit);
  auto amps = state.amplitudes();
  hadamard_in_place(amps, state.num_qubits(), qubit);
  return StateBuilder::make(state.num_qubits(), std::move(amps));
}

QuantumState apply_cnot(const QuantumState& state, int control, int target) {
  check_index(state, control);
  check_index(state, target);
  if (control == target) throw std::invalid_argument("CNOT control and target must differ");
  const std::size_t cmask = mask_of(state.num_qubits(), control);
  const std::size_t tmask = mask_of(state.num_qubits(), target);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }
  return StateBuilder::make(state.num_qubits(), std::move(amps));
}

Projection project(const QuantumState& state, int qubit, Basis basis, Bit bit) {
  check_index(state, qubit);
  if (bit > 1) throw std::invalid_argument("bit must be 0 or 1");
  const int n = state.num_qubits();
  const std::size_t mask = mask_of(n, qubit);
  auto amps = state.amplitudes();
  if (basis == Basis::X) hadamard_in_place(amps, n, qubit);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (static_cast<Bit>((i & mask) != 0) != bit) amps[i] = 0.0;
  }
  Projection result;
  result.probability = sum_norm(amps);
  if (result.probability > 0.0) {
    const double scale = 1.0 / std::sqrt(result.probability);
    for (auto& a : amps) a *= scale;
  }
  if (basis == Basis::X) hadamard_in_place(amps, n, qubit);
  result.post = std::move(amps);
  return result;
}

Measurement measure(const QuantumState& state, int qubit, Basis basis, RandomStream& rng) {
  Projection zero = project(state, qubit, basis, 0);
  Projection one = project(state, qubit, basis, 1);
  if (zero.probability <= 0.0 && one.probability <= 0.0) {
    throw std::logic_error("both projections vanish; input state is not normalized");
  }
  const double p0 = zero.probability / (zero.probability + one.probability);
  const Bit bit = rng.uniform() < p0 ? 0 : 1;
  Projection& chosen = bit == 0 ? zero : one;
  return Measurement{MeasurementOutcome{qubit, basis, bit, chosen.probability},
                     StateBuilder::make(state.num_qubits(), std::move(chosen.post))};
}

namespace {

void enumerate_outcomes(const QuantumState& state, const std::vector<PlanStep>& plan,
                        std::size_t step, std::size_t prefix, double weight,
                        std::vector<double>& out) {
  if (step == plan.size()) {
    out[prefix] += weight;
    return;
  }
  for (Bit bit = 0; bit <= 1; ++bit) {
    Projection p = project(state, plan[step].qubit, plan[step].basis, bit);
    const std::size_t next = (prefix << 1) | bit;
    if (p.probability <= 0.0) continue;
    enumerate_outcomes(StateBuilder::make(state.num_qubits(), std::move(p.post)), plan, step + 1,
                       next, weight * p.probability, out);
  }
}

}  // namespace

OutcomeTable outcome_distribution(const QuantumState& state, const std::vector<PlanStep>& plan) {
  std::vector<bool> seen(state.num_qubits(), false);
  for (const auto& step : plan) {
    check_index(state, step.qubit);
    if (seen[step.qubit]) throw std::invalid_argument("measurement plan repeats a qubit");
    seen[step.qubit] = true;
  }
  OutcomeTable table{plan, std::vector<double>(std::size_t{1} << plan.size(), 0.0)};
  enumerate_outcomes(state, plan, 0, 0, 1.0, table.probabilities);
  return table;
}

QuantumState remove_qubit(const QuantumState& state, int qubit, const QuantumState& bra) {
  check_index(state, qubit);
  if (bra.num_qubits() != 1) throw std::invalid_argument("bra must be a single-qubit state");
  if (state.num_qubits() < 2) throw std::invalid_argument("cannot remove the only qubit");
  const int n = state.num_qubits();
  const int low_bits = n - 1 - qubit;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
  std::vector<Amplitude> amps(state.dimension() / 2);
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const std::size_t b = (i >> low_bits) & 1;
    const std::size_t j = ((i >> (low_bits + 1)) << low_bits) | (i & low_mask);
    amps[j] += std::conj(bra[b]) * state[i];
  }
  const double norm = sum_norm(amps);
  if (norm < kNormTolerance) throw std::logic_error("qubit has no overlap with the given bra");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return StateBuilder::make(n - 1, std::move(amps));
}

QuantumState insert_qubit(const QuantumState& state, int position, const QuantumState& single) {
  if (single.num_qubits() != 1) throw std::invalid_argument("inserted state must be one qubit");
  if (position < 0 || position > state.num_qubits()) {
    throw std::out_of_range("insert position out of range");
  }
  const int n = state.num_qubits() + 1;
  if (n > kMaxQubits) throw std::invalid_argument("insertion would exceed the qubit budget");
  const int low_bits = n - 1 - position;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t b = (i >> low_bits) & 1;
    const std::size_t j = ((i >> (low_bits + 1)) << low_bits) | (i & low_mask);
    amps[i] = single[b] * state[j];
  }
  return StateBuilder::make(n, std::move(amps));
}

double max_amplitude_distance(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("state sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace qsdc
