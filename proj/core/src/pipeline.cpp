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

#include "mqft/pipeline.hpp"

#include <stdexcept>

#include "mqft/rotation.hpp"

namespace mqft {

std::vector<ControlQubitState> encode_input_states(const PhaseWord& word) {
  const std::size_t n = word.size();
  std::vector<ControlQubitState> states;
  states.reserve(n);
  double theta = 0.0;  // 0.b_{n-k+1}...b_n for the step being built
  for (std::size_t k = 1; k <= n; ++k) {
    theta = (static_cast<double>(word.bit(n - k + 1)) + theta) * 0.5;
    states.push_back(ControlQubitState::from_relative_phase_turns(theta));
  }
  return states;
}

namespace {

struct StepLoop {
  const PhaseWord& word;
  std::vector<std::uint8_t> feedback;  // newest measurement first
  TrialRecord record;

  explicit StepLoop(const PhaseWord& w) : word(w) {
    const std::size_t n = w.size();
    record.truth = w;
    record.recovered.assign(n, 0);
    record.retries.assign(n, 0);
  }

  // Registers the decided bit for step k. Later bits keep being recorded
  // after the first error; only run_length freezes.
  void accept(std::size_t k, std::uint8_t bit) {
    const std::size_t n = word.size();
    record.recovered[n - k] = bit;
    feedback.insert(feedback.begin(), bit);
    record.steps_completed = k;
    if (record.run_length == 0 && bit != word.bit(n - k + 1)) {
      record.run_length = k;
    }
  }

  TrialRecord finish() {
    const std::size_t n = word.size();
    if (!record.aborted && record.run_length == 0) {
      record.run_length = n;
      record.censored = true;
    }
    return std::move(record);
  }
};

}  // namespace

TrialRecord run_serial_mqft(const PhaseWord& word) {
  const std::size_t n = word.size();
  const auto inputs = encode_input_states(word);
  StepLoop loop(word);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto cmd = rotation_angle(loop.feedback, static_cast<int>(k));
    auto state = apply_hadamard(apply_rotation(inputs[k - 1], cmd));
    const std::uint8_t bit =
        std::norm(state.amp1) > std::norm(state.amp0) ? 1 : 0;
    loop.accept(k, bit);
  }
  return loop.finish();
}

TrialRecord run_serial_mqft(const PhaseWord& word, const NoiseParams& noise,
                            std::mt19937_64& rng, int repetitions) {
  noise.validate();
  if (repetitions < 1) {
    throw std::invalid_argument("run_serial_mqft: repetitions must be >= 1");
  }
  const std::size_t n = word.size();
  const auto inputs = encode_input_states(word);
  StepLoop loop(word);

  for (std::size_t k = 1; k <= n; ++k) {
    const std::uint8_t true_bit = word.bit(n - k + 1);

    if (noise.p_override) {
      // Physics bypassed: every measurement is an independent flip of the
      // true bit with the configured probability.
      int wrong = 0;
      for (int rep = 0; rep < repetitions; ++rep) {
        if (random_bernoulli(rng, *noise.p_override)) ++wrong;
      }
      const bool majority_wrong = 2 * wrong >= repetitions;
      loop.accept(k, majority_wrong ? static_cast<std::uint8_t>(1 - true_bit)
                                    : true_bit);
      continue;
    }

    const auto cmd =
        rotation_angle(loop.feedback, static_cast<int>(k), noise.truncation_m);
    const auto dac =
        quantize_phase_dac(cmd.phi_turns, noise.v_pi, noise.dac_digits);
    const auto state = apply_hadamard(apply_rotation(
        inputs[k - 1], cmd, dac.delta_dac + noise.extra_delta));
    const double p0 = povm_outcome_probability(state, noise.visibility);

    int votes_one = 0;
    bool clicked_all = true;
    for (int rep = 0; rep < repetitions && clicked_all; ++rep) {
      bool clicked = false;
      for (int attempt = 0; attempt < noise.retry_cap; ++attempt) {
        const auto pulse = sample_pulse(noise, p0, rng);
        if (pulse.clicked()) {
          votes_one += pulse.bit;
          clicked = true;
          break;
        }
        ++loop.record.retries[k - 1];
      }
      clicked_all = clicked;
    }
    if (!clicked_all) {
      loop.record.aborted = true;
      loop.record.abort_step = k;
      break;
    }

    std::uint8_t bit;
    const int votes_zero = repetitions - votes_one;
    if (votes_one == votes_zero) {
      bit = static_cast<std::uint8_t>(1 - true_bit);  // tie counts as error
    } else {
      bit = votes_one > votes_zero ? 1 : 0;
    }
    loop.accept(k, bit);
  }
  return loop.finish();
}

}  // namespace mqft
