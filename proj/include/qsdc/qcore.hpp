#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsdc/random.hpp"

namespace qsdc {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 8;
inline constexpr double kNormTolerance = 1e-9;

enum class Basis { Z, X };

const char* to_string(Basis basis);

/// Dense state vector over at most kMaxQubits qubits.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the
/// protocol's (a, A, B, E) ordering reads left to right in kets.
/// Instances are normalized and finite; operations return new states.
class QuantumState {
 public:
  /// Throws std::invalid_argument if the size is not 2^num_qubits or the
  /// vector is not finite and normalized within kNormTolerance.
  QuantumState(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }

  double norm_squared() const;

 private:
  struct Unchecked {};
  QuantumState(int num_qubits, std::vector<Amplitude> amplitudes, Unchecked)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  friend struct StateBuilder;

  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

struct MeasurementOutcome {
  int qubit = 0;
  Basis basis = Basis::Z;
  Bit bit = 0;
  double probability = 0.0;
};

struct Measurement {
  MeasurementOutcome outcome;
  QuantumState post;
};

/// Result of projecting one qubit onto one eigenstate. `post` is the
/// renormalized projection; it is meaningless when probability is zero.
struct Projection {
  double probability = 0.0;
  std::vector<Amplitude> post;
};

struct PlanStep {
  int qubit = 0;
  Basis basis = Basis::Z;
};

/// Exact joint distribution of a measurement plan. Outcome index bit k
/// (counting from the most significant) is the result of plan step k.
struct OutcomeTable {
  std::vector<PlanStep> plan;
  std::vector<double> probabilities;

  std::string key(std::size_t outcome) const;
  double at(std::string_view key) const;
  double total() const;
};

QuantumState basis_state(int num_qubits, std::string_view label);
QuantumState make_epr_pair();
QuantumState encode_message_qubit(Bit bit);
/// Single-qubit eigenstate of `basis` with eigenbit `bit`.
QuantumState eigenstate(Basis basis, Bit bit);

QuantumState tensor(const QuantumState& a, const QuantumState& b);
QuantumState apply_hadamard(const QuantumState& state, int qubit);
QuantumState apply_cnot(const QuantumState& state, int control, int target);

Projection project(const QuantumState& state, int qubit, Basis basis, Bit bit);
Measurement measure(const QuantumState& state, int qubit, Basis basis, RandomStream& rng);
OutcomeTable outcome_distribution(const QuantumState& state, const std::vector<PlanStep>& plan);

/// Contracts `qubit` against the single-qubit state `bra` (<bra|_qubit psi),
/// returning the renormalized remainder. Throws std::logic_error when the
/// overlap vanishes.
QuantumState remove_qubit(const QuantumState& state, int qubit, const QuantumState& bra);
/// Inserts a single-qubit state so that it becomes qubit `position`.
QuantumState insert_qubit(const QuantumState& state, int position, const QuantumState& single);

/// Largest componentwise amplitude difference; states must have equal size.
double max_amplitude_distance(const QuantumState& a, const QuantumState& b);

}  // namespace qsdc
