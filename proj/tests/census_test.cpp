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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace mqft {
namespace {

std::vector<PhaseWord> random_words(std::size_t count, std::size_t n,
                                    std::uint64_t salt) {
  auto rng = testing::test_rng(salt);
  std::vector<PhaseWord> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    words.push_back(PhaseWord::random(n, rng));
  }
  return words;
}

TEST(Census, ExactFeedbackHasNoPhaseError) {
  CensusSettings settings;  // no truncation, exact drive
  const auto words = random_words(10, 64, 40);
  const auto result = phase_error_census(words, settings);
  EXPECT_EQ(result.rotations, 640u);
  EXPECT_DOUBLE_EQ(result.mean_abs, 1.0);
  EXPECT_DOUBLE_EQ(result.min_abs, 1.0);
  for (double c : result.cos_delta) EXPECT_DOUBLE_EQ(c, 1.0);
}

TEST(Census, TruncationAtFiveBitsStaysAboveTheFloor) {
  CensusSettings settings;
  settings.truncation_m = 5;
  const auto words = random_words(40, 255, 41);
  const auto result = phase_error_census(words, settings);
  const double floor = std::cos(std::numbers::pi / 16.0);
  EXPECT_GE(result.min_abs, floor - 1e-12);
  for (double c : result.cos_delta) {
    EXPECT_GE(c, 0.98);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Census, MeanCosDeltaNearReferenceValue) {
  // For steps deep enough to truncate, the dropped tail is uniform on
  // [0, 2^-m) so E cos(delta) tends to sinc(pi/16) = 0.99359; early steps
  // contribute exactly 1, nudging the full-run mean slightly above that.
  CensusSettings settings;
  settings.truncation_m = 5;
  const auto words = random_words(200, 255, 42);
  const auto result = phase_error_census(words, settings);
  EXPECT_EQ(result.rotations, 200u * 255u);
  EXPECT_NEAR(result.mean_abs, 0.9936, 2e-3);
  const double sinc = std::sin(std::numbers::pi / 16) / (std::numbers::pi / 16);
  const double expected = (5.0 * 1.0 + 250.0 * sinc) / 255.0;
  EXPECT_NEAR(result.mean_abs, expected, 5e-4);
}

TEST(Census, DacQuantizationShiftsTheDistributionSlightly) {
  CensusSettings exact;
  exact.truncation_m = 5;
  CensusSettings quantized = exact;
  quantized.dac_digits = 3;
  quantized.v_pi = 5.80;

  const auto words = random_words(50, 255, 43);
  const auto with_dac = phase_error_census(words, quantized);
  const auto without = phase_error_census(words, exact);
  EXPECT_NE(with_dac.mean_abs, without.mean_abs);
  // Three drive digits move the phase by at most pi * 0.005 / v_pi.
  EXPECT_GE(with_dac.min_abs, 0.980);
}

TEST(Census, HistogramCountsEveryRotation) {
  CensusSettings settings;
  settings.truncation_m = 5;
  const auto words = random_words(10, 100, 44);
  const auto result = phase_error_census(words, settings);
  const auto hist = result.histogram(40, 0.98, 1.0);
  std::size_t total = 0;
  for (auto c : hist) total += c;
  EXPECT_EQ(total, result.rotations);
}

TEST(Census, RejectsEmptySample) {
  CensusSettings settings;
  EXPECT_THROW(phase_error_census({}, settings), std::invalid_argument);
}

}  // namespace
}  // namespace mqft
