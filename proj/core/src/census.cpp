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

#include "mqft/census.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mqft/noise.hpp"
#include "mqft/rotation.hpp"

namespace mqft {

std::vector<std::size_t> CensusResult::histogram(int bins, double lo,
                                                 double hi) const {
  if (bins < 1 || !(hi > lo)) {
    throw std::invalid_argument("CensusResult::histogram: bad binning");
  }
  std::vector<std::size_t> counts(bins, 0);
  for (double c : cos_delta) {
    int idx = static_cast<int>(std::floor((c - lo) / (hi - lo) * bins));
    idx = std::clamp(idx, 0, bins - 1);
    ++counts[idx];
  }
  return counts;
}

CensusResult phase_error_census(std::span<const PhaseWord> words,
                                const CensusSettings& settings) {
  if (words.empty()) {
    throw std::invalid_argument("phase_error_census: empty word sample");
  }
  CensusResult result;
  double sum_abs = 0.0;
  double min_abs = 1.0;

  std::vector<std::uint8_t> feedback;  // newest bit first
  for (const auto& word : words) {
    const std::size_t n = word.size();
    feedback.clear();
    for (std::size_t k = 1; k <= n; ++k) {
      const auto cmd =
          rotation_angle(feedback, static_cast<int>(k), settings.truncation_m);
      const auto dac =
          quantize_phase_dac(cmd.phi_turns, settings.v_pi, settings.dac_digits);
      const double c = std::cos(cmd.delta + dac.delta_dac);
      result.cos_delta.push_back(c);
      sum_abs += std::abs(c);
      min_abs = std::min(min_abs, std::abs(c));
      feedback.insert(feedback.begin(), word.bit(n - k + 1));
    }
  }
  result.rotations = result.cos_delta.size();
  result.mean_abs = sum_abs / static_cast<double>(result.rotations);
  result.min_abs = min_abs;
  return result;
}

}  // namespace mqft
