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

#ifndef MQFT_PIPELINE_HPP_
#define MQFT_PIPELINE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "mqft/control_qubit.hpp"
#include "mqft/noise.hpp"
#include "mqft/phase_word.hpp"

namespace mqft {

/// Control-qubit input states for every step of a serial transform of
/// `word`. The state processed at step k (1-based) is
/// (|0> + e^{2 pi i 0.b_{n-k+1}...b_n} |1>)/sqrt(2), so step 1 carries the
/// lowest fraction bit alone.
std::vector<ControlQubitState> encode_input_states(const PhaseWord& word);

/// Outcome of one serial transform run.
struct TrialRecord {
  PhaseWord truth;
  std::vector<std::uint8_t> recovered;  // word order, b1 first
  std::vector<std::uint32_t> retries;   // per step: re-sent pulses beyond
                                        // the first, summed over repetitions
  std::size_t steps_completed = 0;
  std::size_t run_length = 0;  // step index of the first wrong bit;
                               // n when every bit came out right
  bool censored = false;       // run_length == n with no error
  bool aborted = false;        // a qubit never produced a click
  std::size_t abort_step = 0;  // 1-based step that aborted, 0 = none

  bool recovered_exactly() const { return censored && !aborted; }
};

/// Ideal serial transform: prepare, rotate by the exact feedback angle,
/// Hadamard, measure projectively. Deterministic, consumes no randomness.
TrialRecord run_serial_mqft(const PhaseWord& word);

/// Serial transform under the device model. Each qubit is decided by the
/// majority of `repetitions` measurements; ties at even repetition counts
/// count against the true bit, matching the convention that makes the
/// majority error rate the binomial tail with the floor(M/2) limit.
/// No-click pulses re-send the same qubit up to noise.retry_cap times;
/// a qubit that never clicks aborts the trial with the abort fields set.
TrialRecord run_serial_mqft(const PhaseWord& word, const NoiseParams& noise,
                            std::mt19937_64& rng, int repetitions = 1);

}  // namespace mqft

#endif  // MQFT_PIPELINE_HPP_
