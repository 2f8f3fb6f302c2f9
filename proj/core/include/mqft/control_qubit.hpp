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

#ifndef MQFT_CONTROL_QUBIT_HPP_
#define MQFT_CONTROL_QUBIT_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mqft {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// One pure control-qubit state as a pair of complex amplitudes.
struct ControlQubitState {
  std::complex<double> amp0{1.0, 0.0};
  std::complex<double> amp1{0.0, 0.0};

  double norm_squared() const {
    return std::norm(amp0) + std::norm(amp1);
  }

  bool is_normalized(double tol = 1e-12) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  /// (|0> + e^{2 pi i theta} |1>)/sqrt(2) for theta in turns.
  static ControlQubitState from_relative_phase_turns(double theta) {
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const double angle = kTwoPi * theta;
    return {{inv_sqrt2, 0.0},
            {inv_sqrt2 * std::cos(angle), inv_sqrt2 * std::sin(angle)}};
  }

  static ControlQubitState ket0() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static ControlQubitState ket1() { return {{0.0, 0.0}, {1.0, 0.0}}; }
};

/// Multiplies amp1 by exp(-2 pi i phi_turns + i extra_delta). amp0 is
/// untouched, so the map is unitary for any arguments.
inline ControlQubitState apply_phase(const ControlQubitState& state,
                                     double phi_turns, double extra_delta) {
  const double angle = -kTwoPi * phi_turns + extra_delta;
  return {state.amp0,
          state.amp1 * std::complex<double>(std::cos(angle), std::sin(angle))};
}

inline ControlQubitState apply_hadamard(const ControlQubitState& state) {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  return {(state.amp0 + state.amp1) * inv_sqrt2,
          (state.amp0 - state.amp1) * inv_sqrt2};
}

}  // namespace mqft

#endif  // MQFT_CONTROL_QUBIT_HPP_
