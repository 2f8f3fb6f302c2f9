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

#ifndef MQFT_NOISE_HPP_
#define MQFT_NOISE_HPP_

#include <cstdint>
#include <optional>
#include <random>

#include "mqft/control_qubit.hpp"
#include "mqft/rng.hpp"

namespace mqft {

/// Device model for one measured-rotation step: an interferometric readout
/// with finite visibility, a digitally quantized phase drive, and
/// photon-counting detection with loss and dark counts.
struct NoiseParams {
  double visibility = 1.0;          // interference contrast v in [0,1]
  std::optional<int> truncation_m;  // feedback angle kept to m fraction bits
  int dac_digits = 0;               // significant decimal digits of the
                                    // drive voltage; 0 = exact drive
  double v_pi = 5.80;               // volts for a pi phase shift
  double mean_photons = 1e6;        // photons per pulse before loss
  double loss_db = 0.0;             // optical loss in the circuit
  double eta_det = 1.0;             // detector efficiency
  double dark_rate = 0.0;           // dark-count probability per pulse
  int retry_cap = 1000;             // max pulses per qubit before giving up
  double extra_delta = 0.0;         // additional injected phase error, rad
  std::optional<double> p_override; // direct per-measurement flip
                                    // probability, bypassing the physics

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// The reference device operating point: v = 0.98, m = 5, three drive
  /// digits, V_pi = 5.80 V, 0.7 photons/pulse, 8.4 dB loss, 13 %
  /// detection efficiency, 6.5e-7 dark counts per pulse.
  static NoiseParams paper_profile();
};

/// Detection result of a single pulse.
struct PulseOutcome {
  enum class Kind { signal_click, dark_click, no_click };
  Kind kind = Kind::no_click;
  std::uint8_t bit = 0;  // meaningful only when kind != no_click

  bool clicked() const { return kind != Kind::no_click; }
};

/// Probability of reading outcome 0 from `state` under the two-element
/// visibility POVM: (1+v)/2 |amp0|^2 + (1-v)/2 |amp1|^2. The complementary
/// outcome has exactly one minus this.
double povm_outcome_probability(const ControlQubitState& state,
                                double visibility);

/// Result of converting a feedback angle into a drive voltage.
struct DacQuantization {
  double voltage = 0.0;     // volts actually programmed
  double delta_dac = 0.0;   // pi (voltage - ideal)/v_pi, radians
};

/// Ideal voltage is 2 v_pi phi (phi = 1/2 turn maps to a pi shift at v_pi
/// volts), rounded to `digits` significant decimal digits. digits <= 0
/// means an exact drive. Accepts phi in [0, 1/2].
DacQuantization quantize_phase_dac(double phi_turns, double v_pi, int digits);

/// Closed-form per-measurement error probability (1 - v cos_delta)/2.
inline double analytic_error_probability(double v, double cos_delta) {
  return 0.5 * (1.0 - v * cos_delta);
}

/// Probability that a pulse produces a signal click:
/// 1 - exp(-mu 10^{-loss/10} eta).
double signal_click_probability(const NoiseParams& params);

/// Draws one pulse. On a signal click the bit is 0 with probability
/// `p_bit0`; a dark click carries a uniformly random bit.
PulseOutcome sample_pulse(const NoiseParams& params, double p_bit0,
                          std::mt19937_64& rng);

}  // namespace mqft

#endif  // MQFT_NOISE_HPP_
