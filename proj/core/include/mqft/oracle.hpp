// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MQFT_ORACLE_HPP_
#define MQFT_ORACLE_HPP_

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "mqft/phase_word.hpp"

namespace mqft {

/// Exact simulation is capped here; measurement branching can cost up to
/// 2^n live statevectors of 2^n amplitudes each.
inline constexpr int kMaxOracleQubits = 14;

/// One gate of the small reference gate set. Qubits are 1-based; qubit j
/// outputs the estimate of word bit j and occupies bit n-j of a basis
/// index (qubit 1 is the most significant).
struct Gate {
  enum class Kind { hadamard, controlled_phase, measure, classical_phase };
  Kind kind = Kind::hadamard;
  int target = 1;
  int control = 0;            // controlled_phase only
  double angle_turns = 0.0;   // controlled_phase: e^{-2 pi i angle} on |11>
  std::vector<int> sources;   // classical_phase: measured qubits feeding in
  std::vector<double> weights;  // per-source angle contribution, turns
};

struct CircuitSpec {
  int n = 1;
  std::vector<Gate> gates;

  /// Checks qubit ranges and that classical phases only read qubits that
  /// an earlier gate measured.
  void validate() const;
};

/// Exact outcome probabilities keyed by the read word as an integer with
/// word bit 1 in the most significant position.
using OutcomeDistribution = std::map<std::uint64_t, double>;

/// Inverse-transform layout: Hadamards and controlled phases with angles
/// pi/2, pi/4, pi/8, ... followed by measurement of every qubit.
CircuitSpec build_qft_circuit(int n);

/// Same structure with every controlled phase replaced by a measurement
/// feeding a classically controlled phase.
CircuitSpec build_semiclassical_circuit(int n);

/// Tensor product (|0> + e^{2 pi i frac(2^{j-1} phi)} |1>)/sqrt(2) over
/// qubits j = 1..n.
std::vector<std::complex<double>> product_input_state(int n, double phi_turns);
std::vector<std::complex<double>> product_input_state(const PhaseWord& word);

/// Exact distribution by branching on every measurement; deterministic,
/// no sampling. The input state must be normalized with dimension 2^n.
OutcomeDistribution outcome_distribution(const CircuitSpec& circuit,
                                         std::vector<std::complex<double>>
                                             input_state);

/// Exact outcome distribution of the one-qubit-at-a-time serial pipeline
/// run ideally, by enumerating every measurement path.
OutcomeDistribution serial_pipeline_distribution(int n, double phi_turns);
OutcomeDistribution serial_pipeline_distribution(const PhaseWord& word);

/// (1/2) sum |d1 - d2| over the union of outcomes.
double total_variation(const OutcomeDistribution& d1,
                       const OutcomeDistribution& d2);

}  // namespace mqft

#endif  // MQFT_ORACLE_HPP_
