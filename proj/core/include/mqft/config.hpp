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

#ifndef MQFT_CONFIG_HPP_
#define MQFT_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mqft/noise.hpp"
#include "mqft/stats.hpp"

namespace mqft {

/// Invalid or inconsistent configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failed file read/write; maps to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode {
  ideal,
  noisy,
  majority,
  fringe,
  census,
  oracle_check,
  bounds,
};

std::string to_string(Mode mode);

enum class WordSource { random, explicit_bits, file };

/// Fully resolved experiment description. Parsed from a flat key = value
/// text file; unknown keys are rejected. `serialize()` emits the canonical
/// form with every effective key spelled out, which parses back to the
/// same configuration.
struct ExperimentConfig {
  Mode mode = Mode::ideal;
  std::uint64_t master_seed = 0;
  bool has_seed = false;
  std::string out_dir = ".";
  int workers = 1;

  // ideal / noisy / majority
  std::size_t n_qubits = 0;
  std::size_t n_trials = 0;
  WordSource word_source = WordSource::random;
  std::string word_bits;  // explicit word, b1 first
  std::string word_file;
  int repetitions = 1;
  bool emit_bits = false;
  std::size_t hist_bin_width = 10;
  double alpha = 0.05;
  PminConvention convention = PminConvention::cumulative;
  double abort_fraction_limit = 0.5;
  NoiseParams noise;

  // fringe
  double fringe_v_start = 0.0;
  double fringe_v_stop = 12.0;
  int fringe_points = 49;
  int pulses_per_point = 1000;
  double phase_offset = 0.0;

  // census
  std::size_t census_words = 95;

  // bounds
  std::size_t kmax = 0;
  std::size_t nmax = 0;
  std::size_t kmin = 0;
  std::size_t nmin = 0;

  // oracle-check
  int oracle_n = 5;
  int oracle_random_phases = 20;

  /// Parses configuration text. Throws ConfigError naming the offending
  /// key on unknown keys, bad values or missing mode requirements.
  static ExperimentConfig parse(const std::string& text);

  /// Reads and parses a config file; throws IoError if unreadable.
  static ExperimentConfig load(const std::string& path);

  /// Canonical key = value form of the effective configuration.
  std::string serialize() const;

  void validate() const;
};

}  // namespace mqft

#endif  // MQFT_CONFIG_HPP_
