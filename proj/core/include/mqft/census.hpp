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

#ifndef MQFT_CENSUS_HPP_
#define MQFT_CENSUS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mqft/phase_word.hpp"

namespace mqft {

struct CensusSettings {
  std::optional<int> truncation_m;
  int dac_digits = 0;  // 0 = exact drive
  double v_pi = 5.80;
};

/// Empirical distribution of the realized rotation-phase error.
struct CensusResult {
  std::vector<double> cos_delta;  // one entry per rotation executed
  double mean_abs = 1.0;
  double min_abs = 1.0;
  std::size_t rotations = 0;

  /// Equal-width histogram of cos(delta) over [lo, hi]; out-of-range
  /// values clamp into the edge bins.
  std::vector<std::size_t> histogram(int bins, double lo, double hi) const;
};

/// Walks every rotation of a serial transform of each word (feedback taken
/// from the true bits) and records cos(delta_truncation + delta_dac).
CensusResult phase_error_census(std::span<const PhaseWord> words,
                                const CensusSettings& settings);

}  // namespace mqft

#endif  // MQFT_CENSUS_HPP_
