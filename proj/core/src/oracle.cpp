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

#include "mqft/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "mqft/control_qubit.hpp"
#include "mqft/rotation.hpp"

namespace mqft {

namespace {

using State = std::vector<std::complex<double>>;

// Branches whose total weight falls below this carry no information the
// equivalence checks could see; dropping them keeps degenerate
// measurements from spawning piles of dead statevectors.
constexpr double kBranchWeightFloor = 1e-24;

void check_range(int n) {
  if (n < 1 || n > kMaxOracleQubits) {
    throw std::invalid_argument("oracle: n must lie in [1, " +
                                std::to_string(kMaxOracleQubits) + "]");
  }
}

std::size_t qubit_mask(int n, int qubit) {
  return std::size_t{1} << (n - qubit);
}

void apply_hadamard_gate(State& psi, int n, int qubit) {
  const std::size_t mask = qubit_mask(n, qubit);
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const auto lo = psi[i];
    const auto hi = psi[i | mask];
    psi[i] = (lo + hi) * inv_sqrt2;
    psi[i | mask] = (lo - hi) * inv_sqrt2;
  }
}

void apply_phase_on_ones(State& psi, std::size_t selector, double turns) {
  const double angle = -kTwoPi * turns;
  const std::complex<double> phase{std::cos(angle), std::sin(angle)};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & selector) == selector) psi[i] *= phase;
  }
}

struct Branch {
  State psi;
  std::vector<int> measured;  // -1 = unmeasured, else the recorded bit
};

double branch_weight(const Branch& b) {
  double w = 0.0;
  for (const auto& a : b.psi) w += std::norm(a);
  return w;
}

}  // namespace

void CircuitSpec::validate() const {
  check_range(n);
  std::vector<bool> measured(static_cast<std::size_t>(n) + 1, false);
  for (const auto& g : gates) {
    if (g.target < 1 || g.target > n) {
      throw std::invalid_argument("CircuitSpec: target qubit out of range");
    }
    switch (g.kind) {
      case Gate::Kind::controlled_phase:
        if (g.control < 1 || g.control > n || g.control == g.target) {
          throw std::invalid_argument("CircuitSpec: bad control qubit");
        }
        break;
      case Gate::Kind::measure:
        measured[static_cast<std::size_t>(g.target)] = true;
        break;
      case Gate::Kind::classical_phase:
        if (g.sources.size() != g.weights.size()) {
          throw std::invalid_argument(
              "CircuitSpec: classical phase source/weight mismatch");
        }
        for (int src : g.sources) {
          if (src < 1 || src > n || !measured[static_cast<std::size_t>(src)]) {
            throw std::invalid_argument(
                "CircuitSpec: classical phase reads an unmeasured qubit");
          }
        }
        break;
      case Gate::Kind::hadamard:
        break;
    }
  }
}

CircuitSpec build_qft_circuit(int n) {
  check_range(n);
  CircuitSpec circuit;
  circuit.n = n;
  for (int j = n; j >= 1; --j) {
    for (int i = j + 1; i <= n; ++i) {
      Gate cp;
      cp.kind = Gate::Kind::controlled_phase;
      cp.control = i;
      cp.target = j;
      cp.angle_turns = std::ldexp(1.0, -(i - j + 1));
      circuit.gates.push_back(cp);
    }
    Gate h;
    h.kind = Gate::Kind::hadamard;
    h.target = j;
    circuit.gates.push_back(h);
  }
  for (int j = n; j >= 1; --j) {
    Gate m;
    m.kind = Gate::Kind::measure;
    m.target = j;
    circuit.gates.push_back(m);
  }
  return circuit;
}

CircuitSpec build_semiclassical_circuit(int n) {
  check_range(n);
  CircuitSpec circuit;
  circuit.n = n;
  for (int j = n; j >= 1; --j) {
    if (j < n) {
      Gate cp;
      cp.kind = Gate::Kind::classical_phase;
      cp.target = j;
      for (int i = j + 1; i <= n; ++i) {
        cp.sources.push_back(i);
        cp.weights.push_back(std::ldexp(1.0, -(i - j + 1)));
      }
      circuit.gates.push_back(cp);
    }
    Gate h;
    h.kind = Gate::Kind::hadamard;
    h.target = j;
    circuit.gates.push_back(h);
    Gate m;
    m.kind = Gate::Kind::measure;
    m.target = j;
    circuit.gates.push_back(m);
  }
  return circuit;
}

std::vector<std::complex<double>> product_input_state(int n,
                                                      double phi_turns) {
  check_range(n);
  // Per-qubit relative phases frac(2^{j-1} phi).
  std::vector<std::complex<double>> one_amp(static_cast<std::size_t>(n) + 1);
  for (int j = 1; j <= n; ++j) {
    double theta = std::ldexp(phi_turns, j - 1);
    theta -= std::floor(theta);
    one_amp[static_cast<std::size_t>(j)] =
        std::complex<double>(std::cos(kTwoPi * theta),
                             std::sin(kTwoPi * theta));
  }
  const std::size_t dim = std::size_t{1} << n;
  const double norm = std::pow(std::numbers::sqrt2 / 2.0, n);
  std::vector<std::complex<double>> psi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::complex<double> amp{norm, 0.0};
    for (int j = 1; j <= n; ++j) {
      if (i & qubit_mask(n, j)) amp *= one_amp[static_cast<std::size_t>(j)];
    }
    psi[i] = amp;
  }
  return psi;
}

std::vector<std::complex<double>> product_input_state(const PhaseWord& word) {
  check_range(static_cast<int>(word.size()));
  return product_input_state(static_cast<int>(word.size()), word.value());
}

OutcomeDistribution outcome_distribution(const CircuitSpec& circuit,
                                         std::vector<std::complex<double>>
                                             input_state) {
  circuit.validate();
  const int n = circuit.n;
  const std::size_t dim = std::size_t{1} << n;
  if (input_state.size() != dim) {
    throw std::invalid_argument("outcome_distribution: dimension mismatch");
  }
  double norm = 0.0;
  for (const auto& a : input_state) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument(
        "outcome_distribution: input state is not normalized");
  }

  std::vector<Branch> branches;
  branches.push_back(
      {std::move(input_state), std::vector<int>(static_cast<std::size_t>(n) + 1, -1)});

  // A trailing run of measurements needs no branch splitting: the final
  // readout takes those bits straight from the basis index.
  std::size_t terminal = circuit.gates.size();
  while (terminal > 0 &&
         circuit.gates[terminal - 1].kind == Gate::Kind::measure) {
    --terminal;
  }

  for (std::size_t g = 0; g < terminal; ++g) {
    const auto& gate = circuit.gates[g];
    switch (gate.kind) {
      case Gate::Kind::hadamard:
        for (auto& b : branches) apply_hadamard_gate(b.psi, n, gate.target);
        break;
      case Gate::Kind::controlled_phase:
        for (auto& b : branches) {
          apply_phase_on_ones(b.psi,
                              qubit_mask(n, gate.control) |
                                  qubit_mask(n, gate.target),
                              gate.angle_turns);
        }
        break;
      case Gate::Kind::classical_phase:
        for (auto& b : branches) {
          double turns = 0.0;
          for (std::size_t i = 0; i < gate.sources.size(); ++i) {
            const int bit =
                b.measured[static_cast<std::size_t>(gate.sources[i])];
            turns += bit * gate.weights[i];
          }
          apply_phase_on_ones(b.psi, qubit_mask(n, gate.target), turns);
        }
        break;
      case Gate::Kind::measure: {
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        const std::size_t mask = qubit_mask(n, gate.target);
        for (auto& b : branches) {
          Branch zero{State(dim), b.measured};
          Branch one{State(dim), b.measured};
          for (std::size_t i = 0; i < dim; ++i) {
            if (i & mask) {
              one.psi[i] = b.psi[i];
            } else {
              zero.psi[i] = b.psi[i];
            }
          }
          zero.measured[static_cast<std::size_t>(gate.target)] = 0;
          one.measured[static_cast<std::size_t>(gate.target)] = 1;
          if (branch_weight(zero) > kBranchWeightFloor) {
            next.push_back(std::move(zero));
          }
          if (branch_weight(one) > kBranchWeightFloor) {
            next.push_back(std::move(one));
          }
        }
        branches = std::move(next);
        break;
      }
    }
  }

  OutcomeDistribution dist;
  for (const auto& b : branches) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double w = std::norm(b.psi[i]);
      if (w == 0.0) continue;
      std::uint64_t key = 0;
      for (int j = 1; j <= n; ++j) {
        const int recorded = b.measured[static_cast<std::size_t>(j)];
        const std::uint64_t bit =
            recorded >= 0 ? static_cast<std::uint64_t>(recorded)
                          : ((i & qubit_mask(n, j)) ? 1u : 0u);
        key = (key << 1) | bit;
      }
      dist[key] += w;
    }
  }
  return dist;
}

OutcomeDistribution serial_pipeline_distribution(int n, double phi_turns) {
  check_range(n);
  OutcomeDistribution dist;
  std::vector<std::uint8_t> feedback;  // newest measurement first

  // Depth-first walk over measurement outcomes; the word integer is
  // assembled with the step-k bit at weight 2^{k-1} (measurement order is
  // lowest word bit first).
  const auto recurse = [&](auto&& self, int k, double prob,
                           std::uint64_t partial) -> void {
    if (prob <= kBranchWeightFloor) return;
    if (k > n) {
      dist[partial] += prob;
      return;
    }
    double theta = std::ldexp(phi_turns, n - k);
    theta -= std::floor(theta);
    const auto prepared = ControlQubitState::from_relative_phase_turns(theta);
    const auto cmd = rotation_angle(feedback, k);
    const auto state = apply_hadamard(apply_rotation(prepared, cmd));
    const double p0 = std::norm(state.amp0);

    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
      const double p = bit == 0 ? p0 : 1.0 - p0;
      feedback.insert(feedback.begin(), bit);
      self(self, k + 1, prob * p,
           partial | (static_cast<std::uint64_t>(bit) << (k - 1)));
      feedback.erase(feedback.begin());
    }
  };
  recurse(recurse, 1, 1.0, 0);
  return dist;
}

OutcomeDistribution serial_pipeline_distribution(const PhaseWord& word) {
  check_range(static_cast<int>(word.size()));
  return serial_pipeline_distribution(static_cast<int>(word.size()),
                                      word.value());
}

double total_variation(const OutcomeDistribution& d1,
                       const OutcomeDistribution& d2) {
  double sum = 0.0;
  for (const auto& [key, p] : d1) {
    const auto it = d2.find(key);
    sum += std::abs(p - (it == d2.end() ? 0.0 : it->second));
  }
  for (const auto& [key, p] : d2) {
    if (!d1.contains(key)) sum += p;
  }
  return 0.5 * sum;
}

}  // namespace mqft
