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

#include "mqft/fringe.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace mqft {
namespace {

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  return v;
}

FringeScan exact_scan(double v, double v_pi, double offset,
                      const std::vector<double>& voltages) {
  FringeScan scan;
  scan.voltages = voltages;
  scan.pulses_per_point = 1.0;
  for (double V : voltages) {
    scan.counts.push_back(fringe_fraction(v, v_pi, offset, V));
  }
  return scan;
}

TEST(FringeFraction, KnownPoints) {
  EXPECT_DOUBLE_EQ(fringe_fraction(1.0, 5.80, 0.0, 0.0), 1.0);
  // A pi shift lands on the dark fringe (1 - v)/2.
  EXPECT_NEAR(fringe_fraction(0.98, 5.80, 0.0, 5.80), 0.01, 1e-12);
  // Quarter period: the cosine vanishes and the fraction sits at 1/2.
  EXPECT_NEAR(fringe_fraction(0.5, 2.0, 0.0, 1.0), 0.5, 1e-12);
}

TEST(FitFringe, RecoversExactModelToMicroPrecision) {
  const auto scan = exact_scan(0.98, 5.80, 0.0, linspace(0.0, 12.0, 49));
  const auto fit = fit_fringe(scan);
  EXPECT_NEAR(fit.visibility, 0.98, 1e-6);
  EXPECT_NEAR(fit.v_pi, 5.80, 1e-6);
  EXPECT_NEAR(fit.phase_offset, 0.0, 1e-6);
  EXPECT_LT(fit.residual, 1e-12);
}

TEST(FitFringe, RecoversNonzeroOffset) {
  const auto scan = exact_scan(0.9, 4.3, 0.7, linspace(0.0, 10.0, 41));
  const auto fit = fit_fringe(scan);
  EXPECT_NEAR(fit.visibility, 0.9, 1e-6);
  EXPECT_NEAR(fit.v_pi, 4.3, 1e-6);
  EXPECT_NEAR(fit.phase_offset, 0.7, 1e-6);
}

TEST(FitFringe, MonteCarloScanWithinOnePercent) {
  auto rng = testing::test_rng(30);
  const auto voltages = linspace(0.0, 12.0, 49);
  const auto scan =
      simulate_fringe_scan(0.98, 5.80, 0.0, voltages, 100'000, rng);
  const auto fit = fit_fringe(scan);
  EXPECT_NEAR(fit.visibility, 0.98, 0.0098);
  EXPECT_NEAR(fit.v_pi, 5.80, 0.058);
}

TEST(FitFringe, AccuracyImprovesWithPulseBudget) {
  const auto voltages = linspace(0.0, 12.0, 49);
  double err_small = 0.0;
  double err_large = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    auto rng_small = testing::test_rng(31 + rep);
    auto rng_large = testing::test_rng(131 + rep);
    const auto fit_small = fit_fringe(
        simulate_fringe_scan(0.98, 5.80, 0.0, voltages, 1'000, rng_small));
    const auto fit_large = fit_fringe(
        simulate_fringe_scan(0.98, 5.80, 0.0, voltages, 100'000, rng_large));
    err_small += std::abs(fit_small.visibility - 0.98) +
                 std::abs(fit_small.v_pi - 5.80) / 5.80;
    err_large += std::abs(fit_large.visibility - 0.98) +
                 std::abs(fit_large.v_pi - 5.80) / 5.80;
  }
  EXPECT_LT(err_large, err_small);
  EXPECT_LT(err_small / 5, 0.1);  // still sane at a thousand pulses
}

TEST(FitFringe, CountsAreBinomialAroundExpectation) {
  auto rng = testing::test_rng(32);
  const std::vector<double> voltages = {2.9};
  const int pulses = 1'000'000;
  const auto scan = simulate_fringe_scan(0.98, 5.80, 0.0, voltages, pulses, rng);
  const double f = fringe_fraction(0.98, 5.80, 0.0, 2.9);
  const double se = std::sqrt(f * (1 - f) * pulses);
  EXPECT_NEAR(scan.counts[0], f * pulses, 4 * se);
}

TEST(FitFringe, RejectsDegenerateScans) {
  FringeScan short_scan;
  short_scan.voltages = {0, 1, 2, 3, 4, 5, 6};
  short_scan.counts = {1, 1, 1, 1, 1, 1, 1};
  short_scan.pulses_per_point = 1.0;
  EXPECT_THROW(fit_fringe(short_scan), std::invalid_argument);

  FringeScan flat;
  flat.voltages.assign(9, 3.0);
  flat.counts.assign(9, 0.5);
  flat.pulses_per_point = 1.0;
  EXPECT_THROW(fit_fringe(flat), std::runtime_error);

  auto rng = testing::test_rng(33);
  EXPECT_THROW(
      simulate_fringe_scan(0.98, 5.80, 0.0, std::vector<double>{1.0}, 0, rng),
      std::invalid_argument);
}

}  // namespace
}  // namespace mqft
