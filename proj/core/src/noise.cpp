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

#include "mqft/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "mqft/rotation.hpp"

namespace mqft {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void NoiseParams::validate() const {
  require(visibility >= 0.0 && visibility <= 1.0,
          "NoiseParams: visibility must lie in [0,1]");
  if (truncation_m) {
    require(*truncation_m >= 1 && *truncation_m <= kMaxTruncationDepth,
            "NoiseParams: truncation_m out of range");
  }
  require(dac_digits >= 0 && dac_digits <= 15,
          "NoiseParams: dac_digits out of range");
  require(v_pi > 0.0, "NoiseParams: v_pi must be positive");
  require(mean_photons >= 0.0, "NoiseParams: mean_photons must be >= 0");
  require(loss_db >= 0.0, "NoiseParams: loss_db must be >= 0");
  require(eta_det >= 0.0 && eta_det <= 1.0,
          "NoiseParams: eta_det must lie in [0,1]");
  require(dark_rate >= 0.0 && dark_rate <= 1.0,
          "NoiseParams: dark_rate must lie in [0,1]");
  require(retry_cap >= 1, "NoiseParams: retry_cap must be >= 1");
  if (p_override) {
    require(*p_override >= 0.0 && *p_override <= 1.0,
            "NoiseParams: p_override must lie in [0,1]");
  }
}

NoiseParams NoiseParams::paper_profile() {
  NoiseParams p;
  p.visibility = 0.98;
  p.truncation_m = 5;
  p.dac_digits = 3;
  p.v_pi = 5.80;
  p.mean_photons = 0.7;
  p.loss_db = 8.4;
  p.eta_det = 0.13;
  p.dark_rate = 6.5e-7;
  p.retry_cap = 1000;
  return p;
}

double povm_outcome_probability(const ControlQubitState& state,
                                double visibility) {
  return 0.5 * (1.0 + visibility) * std::norm(state.amp0) +
         0.5 * (1.0 - visibility) * std::norm(state.amp1);
}

DacQuantization quantize_phase_dac(double phi_turns, double v_pi, int digits) {
  if (phi_turns < 0.0 || phi_turns > 0.5) {
    throw std::invalid_argument("quantize_phase_dac: phi out of [0, 1/2]");
  }
  if (v_pi <= 0.0) throw std::invalid_argument("quantize_phase_dac: v_pi <= 0");

  const double ideal = 2.0 * v_pi * phi_turns;
  DacQuantization q;
  if (digits <= 0 || ideal == 0.0) {
    q.voltage = ideal;
    q.delta_dac = 0.0;
    return q;
  }
  // Round to `digits` significant decimal digits.
  const int exponent = static_cast<int>(std::floor(std::log10(ideal)));
  const double scale = std::pow(10.0, digits - 1 - exponent);
  q.voltage = std::round(ideal * scale) / scale;
  q.delta_dac = std::numbers::pi * (q.voltage - ideal) / v_pi;
  return q;
}

double signal_click_probability(const NoiseParams& params) {
  const double transmission = std::pow(10.0, -params.loss_db / 10.0);
  const double mean_detected =
      params.mean_photons * transmission * params.eta_det;
  return -std::expm1(-mean_detected);
}

PulseOutcome sample_pulse(const NoiseParams& params, double p_bit0,
                          std::mt19937_64& rng) {
  PulseOutcome out;
  if (random_bernoulli(rng, signal_click_probability(params))) {
    out.kind = PulseOutcome::Kind::signal_click;
    out.bit = random_bernoulli(rng, p_bit0) ? 0 : 1;
    return out;
  }
  if (random_bernoulli(rng, params.dark_rate)) {
    out.kind = PulseOutcome::Kind::dark_click;
    out.bit = static_cast<std::uint8_t>(rng() & 1u);
    return out;
  }
  out.kind = PulseOutcome::Kind::no_click;
  return out;
}

}  // namespace mqft
