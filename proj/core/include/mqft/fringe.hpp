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

#ifndef MQFT_FRINGE_HPP_
#define MQFT_FRINGE_HPP_

#include <random>
#include <span>
#include <vector>

namespace mqft {

/// Expected click fraction at drive voltage V:
/// (1 + v cos(pi V / v_pi + offset))/2.
double fringe_fraction(double visibility, double v_pi, double phase_offset,
                       double voltage);

/// One interference scan: counts of photons detected per drive voltage.
/// Counts are kept real-valued so an exact expected-value scan can be fed
/// through the same fitting path as a sampled one.
struct FringeScan {
  std::vector<double> voltages;
  std::vector<double> counts;
  double pulses_per_point = 0.0;
};

/// Samples a scan with binomial counting statistics at each voltage.
FringeScan simulate_fringe_scan(double visibility, double v_pi,
                                double phase_offset,
                                std::span<const double> voltages,
                                int pulses_per_point, std::mt19937_64& rng);

struct FringeFit {
  double visibility = 0.0;
  double v_pi = 0.0;
  double phase_offset = 0.0;  // radians, in (-pi, pi]
  double residual = 0.0;      // sum of squared fraction residuals
};

/// Least-squares fit of A + B cos(pi V / v_pi + offset) to the scan's
/// click fractions; visibility is recovered as B/A. The period is located
/// by a grid scan refined with golden-section search, everything else is a
/// linear solve. Requires at least 8 points; throws std::runtime_error
/// with diagnostics when the fit degenerates.
FringeFit fit_fringe(const FringeScan& scan);

}  // namespace mqft

#endif  // MQFT_FRINGE_HPP_
